use crate::error::Result;
use crate::graph::{VertexSet, WeightedGraph};
use serde::{Deserialize, Serialize};

/// Options for the mixing-bound checker.
#[derive(Debug, Clone, Copy)]
pub struct MixingOptions {
    /// Clamp lambda2 to `max(lambda2, 0)`. The one-sided bound needs a
    /// nonnegative coefficient on the off-stationary term to be sound for
    /// graphs with negative lambda2 (complete graphs); the signed form is
    /// available for experimentation.
    pub clamp_lambda2: bool,
    pub tolerance: f64,
}

impl Default for MixingOptions {
    fn default() -> Self {
        MixingOptions {
            clamp_lambda2: true,
            tolerance: 1e-9,
        }
    }
}

/// One evaluation of the mixing bound `w(S,S) ≤ (λ + |S|/|V|)·D·|S|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixingReport {
    pub lhs: u64,
    pub rhs: f64,
    pub holds: bool,
    pub lambda2: f64,
    /// Coefficient actually used on the λ term (clamped or signed).
    pub lambda_used: f64,
    pub degree: u64,
    pub set_size: usize,
    pub vertex_count: usize,
}

/// Checks the mixing bound for a total-weight-regular graph, with the
/// default clamped-λ₂ form.
pub fn mixing_bound_check(
    g: &WeightedGraph,
    s: &VertexSet,
    lambda2: Option<f64>,
) -> Result<MixingReport> {
    mixing_bound_check_with(g, s, lambda2, MixingOptions::default())
}

pub fn mixing_bound_check_with(
    g: &WeightedGraph,
    s: &VertexSet,
    lambda2: Option<f64>,
    opts: MixingOptions,
) -> Result<MixingReport> {
    let degree = g.require_regular()?;
    let lambda2 = match lambda2 {
        Some(l) => l,
        None => crate::spectral::lambda2_walk(g)?.lambda2,
    };
    let lhs = g.edge_weight_between(s, s)?;
    let n = g.vertex_count();
    let lambda_used = if opts.clamp_lambda2 {
        lambda2.max(0.0)
    } else {
        lambda2
    };
    let rhs = (lambda_used + s.len() as f64 / n as f64) * degree as f64 * s.len() as f64;
    Ok(MixingReport {
        lhs,
        rhs,
        holds: lhs as f64 <= rhs + opts.tolerance,
        lambda2,
        lambda_used,
        degree,
        set_size: s.len(),
        vertex_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;

    #[test]
    fn full_set_always_holds() {
        let g = WeightedGraph::complete(5, 2);
        let s = VertexSet::new(Side::Left, (0..5).collect());
        let rep = mixing_bound_check(&g, &s, None).unwrap();
        // |S|/|V| = 1 makes rhs >= D|S| >= lhs
        assert!(rep.holds);
        assert_eq!(rep.lhs, 5 * 4 * 2);
    }

    #[test]
    fn singleton_has_zero_lhs() {
        let g = WeightedGraph::complete(4, 1);
        let s = VertexSet::new(Side::Left, vec![2]);
        let rep = mixing_bound_check(&g, &s, None).unwrap();
        assert_eq!(rep.lhs, 0);
        assert!(rep.holds);
    }

    #[test]
    fn non_regular_input_is_rejected() {
        let g = WeightedGraph::from_entries(3, [(0, 1, 1)]).unwrap();
        let s = VertexSet::new(Side::Left, vec![0]);
        assert!(mixing_bound_check(&g, &s, Some(0.5)).is_err());
    }

    #[test]
    fn petersen_outer_cycle() {
        let g = petersen();
        let s = VertexSet::new(Side::Left, vec![0, 1, 2, 3, 4]);
        let rep = mixing_bound_check(&g, &s, Some(1.0 / 3.0)).unwrap();
        assert_eq!(rep.lhs, 10);
        assert!((rep.rhs - 12.5).abs() < 1e-12);
        assert!(rep.holds);
    }

    fn petersen() -> WeightedGraph {
        let mut g = WeightedGraph::new(10).unwrap();
        for i in 0..5 {
            g.add_weight(i, (i + 1) % 5, 1).unwrap(); // outer cycle
            g.add_weight(i, i + 5, 1).unwrap(); // spokes
            g.add_weight(5 + i, 5 + (i + 2) % 5, 1).unwrap(); // pentagram
        }
        g
    }

    #[test]
    fn petersen_lambda2_is_one_third() {
        let rep = crate::spectral::lambda2_walk(&petersen()).unwrap();
        assert!((rep.lambda2 - 1.0 / 3.0).abs() < 1e-9);
    }
}
