use thiserror::Error;

use crate::axiom::ExchangeViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set has {size} elements, at most {max} are supported")]
    GroundTooLarge { size: usize, max: usize },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("subset mask {mask:#x} has bits outside a ground set of size {size}")]
    SubsetOutOfRange { mask: u32, size: usize },

    #[error("ground sets differ: {left:?} vs {right:?}")]
    GroundMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("family is empty")]
    EmptyFamily,

    /// An axiom check failed; `detail` renders the witness with element labels.
    #[error("{detail}")]
    Violation {
        violation: ExchangeViolation,
        detail: String,
    },

    #[error("rank {rank} out of range for a ground set of size {size}")]
    RankOutOfRange { rank: usize, size: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph: {0}")]
    Graph(String),

    #[error("n = {n} exceeds the exhaustive limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
