use crate::error::{Error, Result};
use crate::graph::{Side, VertexSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// An unweighted bipartite graph with dense 0-based vertex indices per side.
///
/// Adjacency is stored per left vertex with each list kept sorted, so the
/// representation (and everything derived from it, including content hashes
/// and gadget port orders) is canonical. Parallel edges are permitted only
/// when the multigraph flag is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adjacency: Vec<Vec<u32>>,
    left_degree: Option<usize>,
    right_degree: Option<usize>,
    multigraph: bool,
}

/// First degree violation found by [`BipartiteGraph::validate_biregular`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub side: Side,
    pub vertex: usize,
    pub found: usize,
    pub expected: usize,
}

/// Outcome of a biregularity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiregularReport {
    pub ok: bool,
    pub violation: Option<DegreeViolation>,
}

impl BipartiteGraph {
    /// Builds a simple bipartite graph, validating ranges and rejecting
    /// duplicate edges.
    pub fn new(left_count: usize, right_count: usize, adjacency: Vec<Vec<u32>>) -> Result<Self> {
        Self::build(left_count, right_count, adjacency, false)
    }

    /// Builds a bipartite multigraph (parallel edges allowed).
    pub fn new_multigraph(
        left_count: usize,
        right_count: usize,
        adjacency: Vec<Vec<u32>>,
    ) -> Result<Self> {
        Self::build(left_count, right_count, adjacency, true)
    }

    fn build(
        left_count: usize,
        right_count: usize,
        mut adjacency: Vec<Vec<u32>>,
        multigraph: bool,
    ) -> Result<Self> {
        if left_count == 0 || right_count == 0 {
            return Err(Error::InvalidGraph(
                "both sides must have at least one vertex".into(),
            ));
        }
        if adjacency.len() != left_count {
            return Err(Error::InvalidGraph(format!(
                "adjacency has {} lists, expected {}",
                adjacency.len(),
                left_count
            )));
        }
        for (w, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            for &v in list.iter() {
                if v as usize >= right_count {
                    return Err(Error::IndexOutOfRange {
                        side: Side::Right,
                        index: v as usize,
                        count: right_count,
                    });
                }
            }
            if !multigraph && list.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge at left vertex {w} in simple mode"
                )));
            }
        }
        let mut g = BipartiteGraph {
            left_count,
            right_count,
            adjacency,
            left_degree: None,
            right_degree: None,
            multigraph,
        };
        g.refresh_degrees();
        Ok(g)
    }

    fn refresh_degrees(&mut self) {
        let d0 = self.adjacency[0].len();
        self.left_degree = self
            .adjacency
            .iter()
            .all(|l| l.len() == d0)
            .then_some(d0)
            .filter(|&d| d > 0);
        let degs = self.right_degrees();
        let r0 = degs[0];
        self.right_degree = degs
            .iter()
            .all(|&d| d == r0)
            .then_some(r0)
            .filter(|&d| d > 0);
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// Uniform left degree, when the graph is left-regular.
    pub fn left_degree(&self) -> Option<usize> {
        self.left_degree
    }

    /// Uniform right degree, when the graph is right-regular.
    pub fn right_degree(&self) -> Option<usize> {
        self.right_degree
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    /// Sorted neighbor list of a left vertex.
    pub fn neighbors(&self, w: usize) -> &[u32] {
        &self.adjacency[w]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Edges as `(left, right)` pairs in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(w, list)| list.iter().map(move |&v| (w, v as usize)))
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut degs = vec![0usize; self.right_count];
        for list in &self.adjacency {
            for &v in list {
                degs[v as usize] += 1;
            }
        }
        degs
    }

    /// Right-side adjacency: for each right vertex, the incident left
    /// vertices in canonical scan order (ascending left index, each left
    /// vertex's list already sorted). This order defines gadget ports.
    pub fn right_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.right_count];
        for (w, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                adj[v as usize].push(w as u32);
            }
        }
        adj
    }

    fn check_left_set(&self, s: &VertexSet) -> Result<()> {
        if s.side() != Side::Left {
            return Err(Error::InvalidSpec("expected a left-side vertex set".into()));
        }
        if let Some(max) = s.max_index() {
            if max >= self.left_count {
                return Err(Error::IndexOutOfRange {
                    side: Side::Left,
                    index: max,
                    count: self.left_count,
                });
            }
        }
        Ok(())
    }

    /// Deduplicated union of the neighbor lists of the vertices in `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_left_set(s)?;
        let mut seen = vec![false; self.right_count];
        let mut out = Vec::new();
        for w in s.iter() {
            for &v in &self.adjacency[w] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    out.push(v as usize);
                }
            }
        }
        out.sort_unstable();
        Ok(VertexSet::new(Side::Right, out))
    }

    /// Neighborhood size only; avoids materializing the set.
    pub fn neighborhood_size(&self, s: &VertexSet) -> Result<usize> {
        Ok(self.neighborhood(s)?.len())
    }

    /// Checks that every left degree is `k` and every right degree is
    /// `d_right`, reporting the first violating vertex otherwise.
    pub fn validate_biregular(&self, k: usize, d_right: usize) -> BiregularReport {
        for (w, list) in self.adjacency.iter().enumerate() {
            if list.len() != k {
                return BiregularReport {
                    ok: false,
                    violation: Some(DegreeViolation {
                        side: Side::Left,
                        vertex: w,
                        found: list.len(),
                        expected: k,
                    }),
                };
            }
        }
        for (v, d) in self.right_degrees().into_iter().enumerate() {
            if d != d_right {
                return BiregularReport {
                    ok: false,
                    violation: Some(DegreeViolation {
                        side: Side::Right,
                        vertex: v,
                        found: d,
                        expected: d_right,
                    }),
                };
            }
        }
        BiregularReport {
            ok: true,
            violation: None,
        }
    }

    /// Biregularity as a hard precondition.
    pub fn require_biregular(&self, k: usize, d_right: usize) -> Result<()> {
        match self.validate_biregular(k, d_right).violation {
            None => Ok(()),
            Some(v) => Err(Error::NotBiregular {
                side: v.side,
                vertex: v.vertex,
                found: v.found,
                expected: v.expected,
            }),
        }
    }

    /// Left degree as a hard precondition.
    pub fn require_left_regular(&self) -> Result<usize> {
        let d = self.adjacency[0].len();
        for (w, list) in self.adjacency.iter().enumerate() {
            if list.len() != d {
                return Err(Error::NotLeftRegular {
                    vertex: w,
                    found: list.len(),
                    expected: d,
                });
            }
        }
        Ok(d)
    }

    /// SHA-256 of the canonical edge-list serialization.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(crate::graph::io::bipartite_to_string(self).as_bytes());
        let digest = hasher.finalize();
        let mut s = String::with_capacity(64);
        for b in digest {
            use std::fmt::Write;
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    /// Complete bipartite graph.
    pub fn complete(left_count: usize, right_count: usize) -> Self {
        let row: Vec<u32> = (0..right_count as u32).collect();
        Self::new(left_count, right_count, vec![row; left_count])
            .expect("complete bipartite graph is always valid")
    }

    /// Perfect matching on `n` vertices per side (left i adjacent to right i).
    pub fn matching(n: usize) -> Self {
        Self::new(n, n, (0..n as u32).map(|i| vec![i]).collect()).expect("matching is always valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(matches!(
            BipartiteGraph::new(2, 2, vec![vec![0, 2], vec![1]]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(BipartiteGraph::new(1, 2, vec![vec![1, 1]]).is_err());
        assert!(BipartiteGraph::new_multigraph(1, 2, vec![vec![1, 1]]).is_ok());
    }

    #[test]
    fn degree_detection() {
        let g = BipartiteGraph::complete(4, 3);
        assert_eq!(g.left_degree(), Some(3));
        assert_eq!(g.right_degree(), Some(4));
        let h = BipartiteGraph::new(2, 2, vec![vec![0, 1], vec![0]]).unwrap();
        assert_eq!(h.left_degree(), None);
        assert_eq!(h.right_degree(), None);
    }

    #[test]
    fn neighborhood_of_empty_set_is_empty() {
        let g = BipartiteGraph::complete(4, 3);
        let n = g.neighborhood(&VertexSet::empty(Side::Left)).unwrap();
        assert!(n.is_empty());
    }

    #[test]
    fn matching_neighborhood_is_identity_on_indices() {
        let g = BipartiteGraph::matching(4);
        let n = g
            .neighborhood(&VertexSet::new(Side::Left, vec![0, 2]))
            .unwrap();
        assert_eq!(n.indices(), &[0, 2]);
    }

    #[test]
    fn complete_bipartite_biregularity() {
        let g = BipartiteGraph::complete(4, 3);
        assert!(g.validate_biregular(3, 4).ok);
        assert!(!g.validate_biregular(4, 3).ok);
        let m = BipartiteGraph::matching(5);
        assert!(m.validate_biregular(1, 1).ok);
    }

    #[test]
    fn mutated_graph_reports_deficient_vertex() {
        // complete (4,3) with one edge removed at left vertex 2
        let mut adj: Vec<Vec<u32>> = vec![vec![0, 1, 2]; 4];
        adj[2] = vec![0, 2];
        let g = BipartiteGraph::new(4, 3, adj).unwrap();
        let rep = g.validate_biregular(3, 4);
        assert!(!rep.ok);
        let v = rep.violation.unwrap();
        assert_eq!(
            (v.side, v.vertex, v.found, v.expected),
            (Side::Left, 2, 2, 3)
        );
    }

    #[test]
    fn handshake() {
        let g = BipartiteGraph::complete(4, 3);
        let left_sum: usize = g.adjacency().iter().map(Vec::len).sum();
        let right_sum: usize = g.right_degrees().iter().sum();
        assert_eq!(left_sum, right_sum);
        assert_eq!(left_sum, g.edge_count());
    }
}
