use super::{Method, SpectralReport};
use crate::error::Result;
use crate::graph::WeightedGraph;
use nalgebra::{DMatrix, DVector};

/// Integer adjacency as a dense f64 matrix.
pub fn adjacency_matrix(g: &WeightedGraph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut m = DMatrix::zeros(n, n);
    for (u, v, w) in g.entries() {
        m[(u, v)] = w as f64;
        m[(v, u)] = w as f64;
    }
    m
}

/// The symmetric normalization `D^{-1/2} A D^{-1/2}` of the walk matrix.
pub fn walk_normalized_matrix(g: &WeightedGraph) -> DMatrix<f64> {
    let degs = g.weight_degrees();
    let n = g.vertex_count();
    let inv_sqrt: Vec<f64> = degs
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    let mut m = DMatrix::zeros(n, n);
    for (u, v, w) in g.entries() {
        let x = w as f64 * inv_sqrt[u] * inv_sqrt[v];
        m[(u, v)] = x;
        m[(v, u)] = x;
    }
    m
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn symmetric_eigenvalues_desc(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

pub(super) fn lambda2_dense(g: &WeightedGraph, degs: &[u64]) -> Result<SpectralReport> {
    let n = g.vertex_count();
    let m = walk_normalized_matrix(g);
    let eig = m.clone().symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let lambda2 = eig.eigenvalues[order[1]];
    let lambda_min = eig.eigenvalues[order[n - 1]];
    let lambda_max_nontrivial_abs = lambda2.abs().max(lambda_min.abs());

    // residual of the reported eigenpair
    let v2 = eig.eigenvectors.column(order[1]).clone_owned();
    let r2 = (&m * &v2 - lambda2 * &v2).norm();

    // the stationary direction sqrt(deg) must be an exact eigenvector for
    // eigenvalue 1
    let mut u = DVector::from_iterator(n, degs.iter().map(|&d| (d as f64).sqrt()));
    u /= u.norm();
    let rs = (&m * &u - &u).norm();

    Ok(SpectralReport {
        lambda2,
        lambda_max_nontrivial_abs,
        method: Method::Dense,
        residual: r2.max(rs),
    })
}
