//! Randomized generation and exact certification of constant-sized lossless
//! gadgets.

use crate::certify::{enumeration_budget, mu_floor, worst_expansion_exact};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::ratio::Ratio;
use crate::seed::rng_from_seed;
use serde::{Deserialize, Serialize};

/// Parameters of a gadget search target.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GadgetSpec {
    /// Left vertex count (plays the role of the outer right degree).
    pub n: usize,
    /// Right side is `⌊beta0 · n⌋`.
    pub beta0: f64,
    /// Left degree.
    pub d0: usize,
    /// Certified set-size fraction.
    pub mu0: f64,
    /// Allowed loss.
    pub eps0: f64,
}

impl GadgetSpec {
    pub fn right_count(&self) -> usize {
        mu_floor(self.beta0, self.n)
    }

    pub fn max_set_size(&self) -> usize {
        mu_floor(self.mu0, self.n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d0 == 0 {
            return Err(Error::InvalidSpec("n and d0 must be positive".into()));
        }
        if !(self.beta0 > 0.0 && self.beta0 <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "beta0 must be in (0, 1], got {}",
                self.beta0
            )));
        }
        if !(self.mu0 > 0.0 && self.mu0 <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "mu0 must be in (0, 1], got {}",
                self.mu0
            )));
        }
        if !(self.eps0 >= 0.0 && self.eps0 < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "eps0 must be in [0, 1), got {}",
                self.eps0
            )));
        }
        if self.right_count() < self.d0 {
            return Err(Error::InvalidSpec(format!(
                "no simple left-regular graph: ⌊beta0·n⌋ = {} < d0 = {}",
                self.right_count(),
                self.d0
            )));
        }
        if self.max_set_size() < 1 {
            return Err(Error::InvalidSpec(format!(
                "vacuous certificate: ⌊mu0·n⌋ = {} < 1",
                self.max_set_size()
            )));
        }
        Ok(())
    }
}

/// Outcome of an exhaustive lossless-expansion certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetCertificate {
    pub spec: GadgetSpec,
    pub graph_sha256: String,
    /// Largest certified set size, `⌊mu·|L|⌋`.
    pub max_set_size: usize,
    /// True when every subset up to `max_set_size` was covered.
    pub exhaustive: bool,
    pub worst_ratio: Ratio,
    pub worst_ratio_value: f64,
    /// Lexicographically least set attaining the worst ratio.
    pub witness: Vec<usize>,
    /// Certification parameters actually used.
    pub mu: f64,
    pub eps: f64,
    pub passed: bool,
    /// Subsets covered, `Σ_i C(|L|, i)`.
    pub sets_covered: u128,
    /// Search attempts consumed when this certificate came out of
    /// [`search_gadget`]; absent for standalone certifications.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
}

/// A generated gadget together with its certificate, as carried by search
/// failures.
#[derive(Debug, Clone)]
pub struct SearchCandidate {
    pub graph: BipartiteGraph,
    pub certificate: GadgetCertificate,
}

/// Successful gadget search.
#[derive(Debug, Clone)]
pub struct GadgetSearch {
    pub graph: BipartiteGraph,
    pub certificate: GadgetCertificate,
    /// Attempts used, counting the successful one.
    pub attempts: usize,
}

/// Draws a simple left-regular bipartite graph: each left vertex picks `d0`
/// right vertices uniformly without replacement, independently across left
/// vertices, deterministically from the seed.
pub fn generate_random_gadget(spec: &GadgetSpec, seed: u64) -> Result<BipartiteGraph> {
    spec.validate()?;
    let r = spec.right_count();
    let mut rng = rng_from_seed(seed);
    let adjacency: Vec<Vec<u32>> = (0..spec.n)
        .map(|_| {
            let mut picks: Vec<u32> = rand::seq::index::sample(&mut rng, r, spec.d0)
                .into_iter()
                .map(|v| v as u32)
                .collect();
            picks.sort_unstable();
            picks
        })
        .collect();
    BipartiteGraph::new(spec.n, r, adjacency)
}

/// Exhaustively certifies `(mu, eps)`-lossless expansion of a left-regular
/// graph. Refuses (never partially passes) when the subset count exceeds the
/// enumeration budget.
pub fn certify_lossless_exact(g: &BipartiteGraph, mu: f64, eps: f64) -> Result<GadgetCertificate> {
    let d = g.require_left_regular()?;
    let max_size = mu_floor(mu, g.left_count());
    let enumeration = worst_expansion_exact(g, max_size, enumeration_budget())?;
    let worst = enumeration.worst;
    let spec = GadgetSpec {
        n: g.left_count(),
        beta0: g.right_count() as f64 / g.left_count() as f64,
        d0: d,
        mu0: mu,
        eps0: eps,
    };
    Ok(GadgetCertificate {
        spec,
        graph_sha256: g.content_hash(),
        max_set_size: max_size,
        exhaustive: true,
        worst_ratio: worst.ratio,
        worst_ratio_value: worst.ratio.as_f64(),
        witness: worst.witness,
        mu,
        eps,
        passed: worst.ratio.at_least(1.0 - eps),
        sets_covered: enumeration.sets_covered,
        attempts: None,
    })
}

/// Generates and certifies gadgets until one passes, deriving the attempt
/// seed as `seed + attempt_index`. Exhaustion returns the best candidate
/// (highest worst ratio) inside the error.
pub fn search_gadget(spec: &GadgetSpec, max_attempts: usize, seed: u64) -> Result<GadgetSearch> {
    spec.validate()?;
    if max_attempts == 0 {
        return Err(Error::InvalidSpec("max_attempts must be positive".into()));
    }
    let mut best: Option<SearchCandidate> = None;
    for attempt in 0..max_attempts {
        let g = generate_random_gadget(spec, seed.wrapping_add(attempt as u64))?;
        let mut cert = certify_lossless_exact(&g, spec.mu0, spec.eps0)?;
        cert.attempts = Some(attempt + 1);
        if cert.passed {
            return Ok(GadgetSearch {
                graph: g,
                certificate: cert,
                attempts: attempt + 1,
            });
        }
        let replace = match &best {
            None => true,
            Some(b) => cert.worst_ratio > b.certificate.worst_ratio,
        };
        if replace {
            best = Some(SearchCandidate {
                graph: g,
                certificate: cert,
            });
        }
    }
    let best = best.expect("at least one attempt ran");
    Err(Error::SearchExhausted {
        attempts: max_attempts,
        best_ratio: best.certificate.worst_ratio_value,
        best: Box::new(best),
    })
}
