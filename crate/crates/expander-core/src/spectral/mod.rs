//! Random-walk spectra, the nonlazy square, and the mixing bound.
//!
//! All spectral quantities are computed from exact integer adjacency data,
//! normalized at the last step. The random walk matrix `W = D⁻¹A` of a
//! weighted graph is similar to the symmetric `D^{-1/2} A D^{-1/2}`, so its
//! eigenvalues are obtained from a symmetric eigenproblem.

mod dense;
mod mixing;
mod nonlazy;
mod power;

pub use dense::{adjacency_matrix, symmetric_eigenvalues_desc, walk_normalized_matrix};
pub use mixing::{mixing_bound_check, mixing_bound_check_with, MixingOptions, MixingReport};
pub use nonlazy::nonlazy_square;
pub use power::PowerOptions;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use serde::{Deserialize, Serialize};

/// Which eigensolver produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Iterative,
}

/// Walk-matrix spectrum summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Second largest (signed) eigenvalue of the walk matrix.
    pub lambda2: f64,
    /// Largest absolute nontrivial eigenvalue (twosided, for comparison).
    pub lambda_max_nontrivial_abs: f64,
    pub method: Method,
    /// Max residual norm over the eigenpairs backing the reported values,
    /// including the stationary direction.
    pub residual: f64,
}

/// Dense-solver size cutoff, overridable via `EXPANDER_DENSE_CUTOFF`.
pub const DEFAULT_DENSE_CUTOFF: usize = 2048;

pub fn dense_cutoff() -> usize {
    std::env::var("EXPANDER_DENSE_CUTOFF")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DENSE_CUTOFF)
}

fn require_no_isolated(g: &WeightedGraph) -> Result<Vec<u64>> {
    let degs = g.weight_degrees();
    if let Some(v) = degs.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex { vertex: v });
    }
    Ok(degs)
}

/// Second largest signed eigenvalue of the degree-normalized walk matrix.
///
/// Uses the dense solver up to [`dense_cutoff`] vertices and deflated power
/// iteration above.
pub fn lambda2_walk(g: &WeightedGraph) -> Result<SpectralReport> {
    if g.vertex_count() <= dense_cutoff() {
        lambda2_walk_with(g, Method::Dense)
    } else {
        lambda2_walk_with(g, Method::Iterative)
    }
}

/// Like [`lambda2_walk`] with an explicit method choice.
pub fn lambda2_walk_with(g: &WeightedGraph, method: Method) -> Result<SpectralReport> {
    let degs = require_no_isolated(g)?;
    if g.vertex_count() < 2 {
        return Err(Error::InvalidSpec(
            "lambda2 needs at least two vertices".into(),
        ));
    }
    match method {
        Method::Dense => dense::lambda2_dense(g, &degs),
        Method::Iterative => power::lambda2_iterative(g, &degs, PowerOptions::default()),
    }
}
