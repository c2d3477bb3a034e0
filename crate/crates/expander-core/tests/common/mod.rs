//! Shared fixtures and independent oracles for integration tests.
//!
//! The enumerator and recount oracles here deliberately avoid the library's
//! DFS/bitset machinery: they recompute everything from scratch through a
//! different code path, so agreement is meaningful.

#![allow(dead_code)]

use expander_core::graph::{BipartiteGraph, Side, VertexSet, WeightedGraph};
use expander_core::ratio::Ratio;
use expander_core::seed::rng_from_seed;
use itertools::Itertools;
use rand::Rng;

/// Naive no-pruning enumerator: iterates size-`i` combinations for every
/// `i ≤ max_size`, recomputing each neighborhood from scratch, with an
/// explicit (ratio, lexicographic witness) minimum so the result is
/// independent of enumeration order.
pub fn naive_worst_expansion(g: &BipartiteGraph, max_size: usize) -> (Ratio, Vec<usize>) {
    let d = g.left_degree().expect("oracle needs a left-regular graph");
    let n = g.left_count();
    let mut best: Option<(Ratio, Vec<usize>)> = None;
    for size in 1..=max_size {
        for combo in (0..n).combinations(size) {
            let mut seen = vec![false; g.right_count()];
            let mut count = 0u64;
            for &w in &combo {
                for &v in g.neighbors(w) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        count += 1;
                    }
                }
            }
            let ratio = Ratio::new(count, (d * size) as u64);
            let replace = match &best {
                None => true,
                Some((r, w)) => ratio < *r || (ratio == *r && combo < *w),
            };
            if replace {
                best = Some((ratio, combo));
            }
        }
    }
    best.expect("max_size >= 1")
}

/// Random simple left-regular bipartite graph (not necessarily
/// right-regular), independent of the gadget sampler's spec checks.
pub fn random_left_regular(n_left: usize, n_right: usize, d: usize, seed: u64) -> BipartiteGraph {
    let mut rng = rng_from_seed(seed);
    let adjacency: Vec<Vec<u32>> = (0..n_left)
        .map(|_| {
            rand::seq::index::sample(&mut rng, n_right, d)
                .into_iter()
                .map(|v| v as u32)
                .collect()
        })
        .collect();
    BipartiteGraph::new(n_left, n_right, adjacency).expect("sampled without replacement")
}

/// Random subset of `0..n` of the given size.
pub fn random_left_set(n: usize, size: usize, seed: u64) -> VertexSet {
    let mut rng = rng_from_seed(seed);
    VertexSet::new(
        Side::Left,
        rand::seq::index::sample(&mut rng, n, size).into_vec(),
    )
}

/// The Petersen graph as a weighted graph with unit weights.
pub fn petersen() -> WeightedGraph {
    let mut g = WeightedGraph::new(10).unwrap();
    for i in 0..5 {
        g.add_weight(i, (i + 1) % 5, 1).unwrap();
        g.add_weight(i, i + 5, 1).unwrap();
        g.add_weight(5 + i, 5 + (i + 2) % 5, 1).unwrap();
    }
    g
}

pub fn complete_graph(n: usize) -> WeightedGraph {
    WeightedGraph::complete(n, 1)
}

pub fn cycle_graph(n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n).unwrap();
    for i in 0..n {
        g.add_weight(i, (i + 1) % n, 1).unwrap();
    }
    g
}

/// Random simple d-regular graph on n vertices via stub pairing with
/// rejection; n·d must be even and small enough for rejection to land.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> WeightedGraph {
    assert!((n * d).is_multiple_of(2), "n·d must be even");
    let mut rng = rng_from_seed(seed);
    'outer: loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        // Fisher-Yates
        for i in (1..stubs.len()).rev() {
            let j = rng.random_range(0..=i);
            stubs.swap(i, j);
        }
        let mut g = WeightedGraph::new(n).unwrap();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.weight(u, v) > 0 {
                continue 'outer;
            }
            g.add_weight(u, v, 1).unwrap();
        }
        return g;
    }
}

/// All subsets of `0..n` as sorted index vectors (2^n of them).
pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Independent heavy-set recount: heavy vertices and the per-left partition
/// by heavy-neighbor count, recomputed from the right-side adjacency.
pub fn recount_heavy(
    outer: &BipartiteGraph,
    s: &VertexSet,
    mu0: f64,
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let big_d0 = outer.right_degree().unwrap();
    let k = outer.left_degree().unwrap();
    let heavy: Vec<usize> = outer
        .right_adjacency()
        .iter()
        .enumerate()
        .filter(|(_, lefts)| {
            let c = lefts.iter().filter(|&&w| s.contains(w as usize)).count();
            c as f64 >= mu0 * big_d0 as f64
        })
        .map(|(v, _)| v)
        .collect();
    let mut counts_left = vec![0usize; k + 1];
    let mut counts_in_s = vec![0usize; k + 1];
    for w in 0..outer.left_count() {
        let h = outer
            .neighbors(w)
            .iter()
            .filter(|&&v| heavy.binary_search(&(v as usize)).is_ok())
            .count();
        counts_left[h] += 1;
        if s.contains(w) {
            counts_in_s[h] += 1;
        }
    }
    (heavy, counts_left, counts_in_s)
}
