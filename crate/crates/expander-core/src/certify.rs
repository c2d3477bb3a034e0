//! Exact worst-case expansion by subset enumeration.
//!
//! The engine enumerates every left subset `S` with `1 ≤ |S| ≤ max_size` of a
//! left-regular bipartite graph and returns the exact minimum of
//! `|N(S)| / (d|S|)` together with the lexicographically least witness
//! attaining it. The gadget certifier and the composed-graph verifier share
//! this engine so their certificates are directly comparable.
//!
//! Enumeration runs as a depth-first search in lexicographic order over
//! prefix shards (one shard per smallest element), processed in parallel.
//! A subtree rooted at a prefix `S` may be skipped only when the running
//! neighborhood already guarantees the outcome for all completions: every
//! completion `S' ⊇ S` has `|N(S')| ≥ |N(S)|` and `|S'| ≤ max_size`, so if
//! `|N(S)| / (d·max_size)` is at least the running minimum, nothing in the
//! subtree can improve it. Skipped ties are lexicographically later than the
//! retained witness, so the tie-break is unaffected.

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::ratio::Ratio;
use rayon::prelude::*;

/// Default cap on `Σ_i C(|L|, i)`, overridable via `EXPANDER_ENUM_BUDGET`.
pub const DEFAULT_ENUM_BUDGET: u128 = 100_000_000;

pub fn enumeration_budget() -> u128 {
    std::env::var("EXPANDER_ENUM_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_BUDGET)
}

/// The worst set found by an enumeration or sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstSet {
    pub ratio: Ratio,
    /// Sorted indices of the witness set.
    pub witness: Vec<usize>,
}

impl WorstSet {
    /// Total order used for deterministic aggregation: smaller ratio first,
    /// then lexicographically smaller witness.
    fn better_than(&self, other: &WorstSet) -> bool {
        match self.ratio.cmp(&other.ratio) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.witness < other.witness,
        }
    }

    pub fn min(self, other: WorstSet) -> WorstSet {
        if other.better_than(&self) {
            other
        } else {
            self
        }
    }
}

/// Result of an exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct ExactEnumeration {
    pub worst: WorstSet,
    /// Number of subsets covered by the certification: `Σ_i C(|L|, i)`.
    /// Pruned subtrees count as covered; their outcome is proven, not
    /// visited.
    pub sets_covered: u128,
    pub max_size: usize,
    pub left_degree: usize,
}

/// `Σ_{i=1..=max_size} C(n, i)`, saturating.
pub fn subsets_to_cover(n: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 1..=max_size.min(n) {
        c = match c.checked_mul((n - i + 1) as u128).map(|x| x / i as u128) {
            Some(x) => x,
            None => return u128::MAX,
        };
        total = total.saturating_add(c);
    }
    total
}

/// `⌊mu · n⌋` with a guard against floating-point values sitting a hair
/// below an integer (e.g. `0.3 * 10`).
pub fn mu_floor(mu: f64, n: usize) -> usize {
    let t = mu * n as f64;
    let f = t.floor();
    let snapped = if t - f > 1.0 - 1e-9 { f + 1.0 } else { f };
    if snapped < 0.0 {
        0
    } else {
        snapped as usize
    }
}

struct DfsCtx<'a> {
    masks: &'a [Vec<u64>],
    words: usize,
    n_left: usize,
    degree: usize,
    max_size: usize,
}

fn dfs(
    ctx: &DfsCtx,
    v: usize,
    depth: usize,
    nb: &mut [u64],
    current: &mut Vec<usize>,
    best: &mut Option<WorstSet>,
) {
    let words = ctx.words;
    let prev = (depth - 1) * words;
    let cur = depth * words;
    let mut count = 0usize;
    for i in 0..words {
        let x = nb[prev + i] | ctx.masks[v][i];
        nb[cur + i] = x;
        count += x.count_ones() as usize;
    }
    current.push(v);
    let ratio = Ratio::new(count as u64, (ctx.degree * depth) as u64);
    match best {
        None => {
            *best = Some(WorstSet {
                ratio,
                witness: current.clone(),
            })
        }
        Some(b) if ratio < b.ratio => {
            b.ratio = ratio;
            b.witness = current.clone();
        }
        _ => {}
    }
    if depth < ctx.max_size {
        let prune = match best {
            // every completion has neighborhood >= count and size <= max_size
            Some(b) => {
                (count as u128) * (b.ratio.den as u128)
                    >= (b.ratio.num as u128) * (ctx.degree * ctx.max_size) as u128
            }
            None => false,
        };
        if !prune {
            for next in (v + 1)..ctx.n_left {
                dfs(ctx, next, depth + 1, nb, current, best);
            }
        }
    }
    current.pop();
}

/// Exact worst expansion ratio over all left subsets of size `1..=max_size`.
///
/// Fails with [`Error::BudgetExceeded`] (never a partial answer) when the
/// subset count exceeds `budget`.
pub fn worst_expansion_exact(
    g: &BipartiteGraph,
    max_size: usize,
    budget: u128,
) -> Result<ExactEnumeration> {
    let degree = g.require_left_regular()?;
    if degree == 0 {
        return Err(Error::InvalidSpec("left degree must be positive".into()));
    }
    let n = g.left_count();
    if max_size == 0 || max_size > n {
        return Err(Error::InvalidSpec(format!(
            "certified set size must be in 1..={n}, got {max_size}"
        )));
    }
    let required = subsets_to_cover(n, max_size);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let words = g.right_count().div_ceil(64);
    let masks: Vec<Vec<u64>> = g
        .adjacency()
        .iter()
        .map(|list| {
            let mut m = vec![0u64; words];
            for &v in list {
                m[v as usize / 64] |= 1u64 << (v as usize % 64);
            }
            m
        })
        .collect();
    let ctx = DfsCtx {
        masks: &masks,
        words,
        n_left: n,
        degree,
        max_size,
    };

    let worst = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut nb = vec![0u64; (max_size + 1) * words];
            let mut current = Vec::with_capacity(max_size);
            let mut best = None;
            dfs(&ctx, first, 1, &mut nb, &mut current, &mut best);
            best.expect("each shard covers at least one singleton")
        })
        .reduce_with(WorstSet::min)
        .expect("left side is nonempty");

    Ok(ExactEnumeration {
        worst,
        sets_covered: required,
        max_size,
        left_degree: degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_to_cover(4, 2), 4 + 6);
        assert_eq!(subsets_to_cover(64, 3), 64 + 2016 + 41664);
        assert_eq!(subsets_to_cover(5, 5), 31);
    }

    #[test]
    fn mu_floor_guards_float_noise() {
        assert_eq!(mu_floor(0.3, 10), 3);
        assert_eq!(mu_floor(0.2, 16), 3);
        assert_eq!(mu_floor(1.0, 7), 7);
        assert_eq!(mu_floor(0.05, 64), 3);
        assert_eq!(mu_floor(0.01, 10), 0);
    }

    #[test]
    fn matching_has_worst_ratio_one() {
        let g = BipartiteGraph::matching(6);
        let out = worst_expansion_exact(&g, 6, 1 << 20).unwrap();
        assert_eq!(out.worst.ratio, Ratio::new(1, 1));
        assert_eq!(out.worst.witness, vec![0]);
        assert_eq!(out.sets_covered, 63);
    }

    #[test]
    fn duplicated_neighborhood_pair_is_found() {
        // left 0 and 1 share both neighbors; worst pair ratio 1/2
        let g = BipartiteGraph::new(3, 4, vec![vec![0, 1], vec![0, 1], vec![2, 3]]).unwrap();
        let out = worst_expansion_exact(&g, 2, 1 << 20).unwrap();
        assert_eq!(out.worst.ratio, Ratio::new(2, 4));
        assert_eq!(out.worst.witness, vec![0, 1]);
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let g = BipartiteGraph::matching(40);
        let err = worst_expansion_exact(&g, 20, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn non_left_regular_is_rejected() {
        let g = BipartiteGraph::new(2, 2, vec![vec![0, 1], vec![0]]).unwrap();
        assert!(worst_expansion_exact(&g, 1, 1000).is_err());
    }
}
