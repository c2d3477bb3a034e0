use crate::error::Result;
use crate::graph::{BipartiteGraph, WeightedGraph};

/// The nonlazy square: the weighted graph on the right vertex set whose
/// weight between distinct `v, v'` counts length-2 paths `v → w → v'`.
/// Backtracking walks (the diagonal) are excluded.
///
/// For a multigraph input, each ordered pair of distinct parallel edge
/// positions contributes a path, matching `Σ_w w(v,w)·w(w,v')`.
pub fn nonlazy_square(x: &BipartiteGraph) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new(x.right_count())?;
    for list in x.adjacency() {
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let (a, b) = (list[i] as usize, list[j] as usize);
                if a != b {
                    g.add_weight(a, b, 1)?;
                }
            }
        }
    }
    Ok(g)
}
