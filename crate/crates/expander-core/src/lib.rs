//! Construction and certification of onesided lossless bipartite expanders.
//!
//! A lossless expander is a bipartite graph in which every sufficiently
//! small left set S has `|N(S)| ≥ (1−ε)·d·|S|`: almost all of its edges
//! reach distinct right vertices. This crate builds such graphs by placing
//! a constant-sized certified gadget on the neighborhood of every right
//! vertex of a large biregular spectral expander, and then checks every
//! claimed property the hard way:
//!
//! - [`gadget`]: randomized gadget generation with exhaustive certification
//!   of the expansion of every small left subset;
//! - [`spectral`]: walk-matrix spectra, the nonlazy square, and the mixing
//!   bound;
//! - [`compose`]: the gadget-on-neighborhoods composition and its structural
//!   identities (left degree, balance, cluster decomposition);
//! - [`verify`]: exact and sampled expansion verification of composed
//!   graphs, plus [`diagnostics`] reproducing the heavy-vertex accounting;
//! - [`plan`] and [`pipeline`]: parameter schedules and the end-to-end run
//!   with reproducibility manifests.
//!
//! Everything randomized takes an explicit 64-bit seed and is deterministic
//! given it.

pub mod certify;
pub mod compose;
pub mod diagnostics;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod pipeline;
pub mod plan;
pub mod ratio;
pub mod seed;
pub mod spectral;
pub mod verify;

pub use crate::error::{Error, Result};
pub use crate::graph::{BipartiteGraph, Side, VertexSet, WeightedGraph};
pub use crate::ratio::Ratio;
