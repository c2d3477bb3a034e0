//! Spectral identities checked against independent routes: the integer
//! matrix-product oracle for the nonlazy square, adjacency-vs-walk scaling,
//! dense-vs-iterative agreement, and the mixing bound under full subset
//! enumeration.

mod common;

use common::{all_subsets, complete_graph, cycle_graph, petersen, random_regular_graph};
use expander_core::graph::{BipartiteGraph, Side, VertexSet, WeightedGraph};
use expander_core::plan::{generate_random_biregular, SamplerMethod};
use expander_core::spectral::{
    adjacency_matrix, lambda2_walk, lambda2_walk_with, mixing_bound_check, nonlazy_square,
    symmetric_eigenvalues_desc, Method,
};

/// Integer `AᵀA` restricted to the right side, by plain triple loop.
fn square_right_oracle(g: &BipartiteGraph) -> Vec<Vec<i64>> {
    let (l, r) = (g.left_count(), g.right_count());
    let mut a = vec![vec![0i64; r]; l];
    for (w, v) in g.edges() {
        a[w][v] += 1;
    }
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..l).map(|w| a[w][i] * a[w][j]).sum();
        }
    }
    m
}

fn weighted_to_dense_i64(g: &WeightedGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for (u, v, w) in g.entries() {
        m[u][v] = w as i64;
        m[v][u] = w as i64;
    }
    m
}

#[test]
fn nonlazy_square_equals_right_square_minus_d_identity() {
    for (k, d, n_left, seed) in [
        (3usize, 8usize, 64usize, 1u64),
        (3, 4, 32, 2),
        (2, 8, 64, 3),
    ] {
        let g = generate_random_biregular(n_left, k, d, seed, SamplerMethod::SwapRepair).unwrap();
        let xp = nonlazy_square(&g).unwrap();
        let got = weighted_to_dense_i64(&xp);
        let mut expect = square_right_oracle(&g);
        for (v, row) in expect.iter_mut().enumerate() {
            row[v] -= d as i64;
        }
        assert_eq!(got, expect, "k={k} d={d}");
    }
}

#[test]
fn walk_lambda2_agrees_with_scaled_adjacency_spectrum() {
    // the nonlazy square of a (k,D)-biregular graph is D(k-1)-regular in
    // total weight, so its walk matrix is the adjacency matrix divided by
    // D(k-1); both routes must give the same lambda2
    for (k, d, n_left, seed) in [(3usize, 8usize, 32usize, 5u64), (4, 8, 48, 6)] {
        let g = generate_random_biregular(n_left, k, d, seed, SamplerMethod::SwapRepair).unwrap();
        let xp = nonlazy_square(&g).unwrap();
        let reg = xp.require_regular().unwrap();
        assert_eq!(reg, (d * (k - 1)) as u64);
        let walk = lambda2_walk(&xp).unwrap().lambda2;
        let adj_ev = symmetric_eigenvalues_desc(adjacency_matrix(&xp));
        let scaled = adj_ev[1] / reg as f64;
        assert!(
            (walk - scaled).abs() < 1e-8,
            "walk {walk} vs scaled adjacency {scaled}"
        );
    }
}

#[test]
fn dense_and_iterative_agree_on_a_nonlazy_square() {
    // |R| = 60 comes from a (3,8)-biregular graph with 160 left vertices
    let g = generate_random_biregular(160, 3, 8, 7, SamplerMethod::SwapRepair).unwrap();
    assert_eq!(g.right_count(), 60);
    let xp = nonlazy_square(&g).unwrap();
    let dense = lambda2_walk_with(&xp, Method::Dense).unwrap();
    let iter = lambda2_walk_with(&xp, Method::Iterative).unwrap();
    assert!(
        (dense.lambda2 - iter.lambda2).abs() < 1e-6,
        "dense {} vs iterative {}",
        dense.lambda2,
        iter.lambda2
    );
    assert!((dense.lambda_max_nontrivial_abs - iter.lambda_max_nontrivial_abs).abs() < 1e-6);
}

#[test]
fn stationary_direction_is_exact_for_dense_reports() {
    for g in [petersen(), complete_graph(7), cycle_graph(9)] {
        let rep = lambda2_walk_with(&g, Method::Dense).unwrap();
        assert!(rep.residual < 1e-10, "residual {}", rep.residual);
        assert!(rep.lambda2 <= 1.0 + 1e-9 && rep.lambda2 >= -1.0 - 1e-9);
        assert!(rep.lambda2 <= rep.lambda_max_nontrivial_abs + 1e-12);
    }
}

#[test]
fn mixing_bound_holds_for_every_subset_of_small_regular_graphs() {
    let fixtures: Vec<WeightedGraph> = vec![
        complete_graph(5),
        cycle_graph(6),
        petersen(),
        random_regular_graph(10, 3, 21),
    ];
    for g in fixtures {
        let n = g.vertex_count();
        let lambda2 = lambda2_walk(&g).unwrap().lambda2;
        for subset in all_subsets(n) {
            let s = VertexSet::new(Side::Left, subset);
            let rep = mixing_bound_check(&g, &s, Some(lambda2)).unwrap();
            assert!(
                rep.holds,
                "mixing bound violated: n={n} |S|={} lhs={} rhs={}",
                rep.set_size, rep.lhs, rep.rhs
            );
        }
    }
}

#[test]
fn signed_form_is_exposed_and_can_fail_where_clamped_holds() {
    // on a complete graph lambda2 < 0; the signed form gives a smaller rhs
    let g = complete_graph(6);
    let s = VertexSet::new(Side::Left, vec![0, 1, 2]);
    let lambda2 = lambda2_walk(&g).unwrap().lambda2;
    assert!(lambda2 < 0.0);
    let clamped = mixing_bound_check(&g, &s, Some(lambda2)).unwrap();
    let signed = expander_core::spectral::mixing_bound_check_with(
        &g,
        &s,
        Some(lambda2),
        expander_core::spectral::MixingOptions {
            clamp_lambda2: false,
            tolerance: 1e-9,
        },
    )
    .unwrap();
    assert!(clamped.holds);
    assert!(signed.rhs < clamped.rhs);
}
