use crate::graph::Side;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{side} vertex index {index} out of range (count {count})")]
    IndexOutOfRange {
        side: Side,
        index: usize,
        count: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    #[error("graph is not left-regular: vertex {vertex} has degree {found}, expected {expected}")]
    NotLeftRegular {
        vertex: usize,
        found: usize,
        expected: usize,
    },

    #[error(
        "graph is not biregular: {side} vertex {vertex} has degree {found}, expected {expected}"
    )]
    NotBiregular {
        side: Side,
        vertex: usize,
        found: usize,
        expected: usize,
    },

    #[error("graph is not regular in total weight: vertex {vertex} has weight degree {found}, expected {expected}")]
    NotRegular {
        vertex: usize,
        found: u64,
        expected: u64,
    },

    #[error("vertex {vertex} is isolated (zero weight degree)")]
    IsolatedVertex { vertex: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("enumeration budget exceeded: {required} subsets required, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error(
        "eigensolver did not converge within {iterations} iterations (residual {residual:.3e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("rejection sampling exhausted after {attempts} attempts; swap repair may be required")]
    RejectionExhausted { attempts: usize },

    #[error("swap repair did not reach a simple graph within {proposals} proposals")]
    SwapRepairExhausted { proposals: usize },

    #[error("composition degree mismatch: right vertex {vertex} of the outer graph has degree {found}, gadget has {expected} left vertices")]
    CompositionMismatch {
        vertex: usize,
        found: usize,
        expected: usize,
    },

    #[error(
        "gadget search exhausted after {attempts} attempts; best worst-ratio seen {best_ratio}"
    )]
    SearchExhausted {
        attempts: usize,
        best_ratio: f64,
        best: Box<crate::gadget::SearchCandidate>,
    },

    #[error("pipeline stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wraps an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
