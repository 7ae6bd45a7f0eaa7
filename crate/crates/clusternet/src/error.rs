use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Exponent arithmetic left the 64-bit range. Entries are never wrapped.
    #[error("exponent arithmetic overflow")]
    Overflow,

    #[error("term order weights must be strictly positive")]
    NonPositiveWeight,

    #[error("index {index} out of range for {limit} variables")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    /// The row-sum/row-combination heuristic found no strictly positive
    /// grading; the caller has to supply one explicitly.
    #[error("no positive grading found; supply one in the model file")]
    NoPositiveGrading,

    /// `partial` counts the items produced before the cap was hit.
    #[error("{what} cap of {cap} exceeded (partial count {partial})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        partial: usize,
    },

    #[error("zero transition vector is not a move")]
    ZeroTransition,

    #[error("unknown species `{name}` at offset {offset}")]
    UnknownSpecies { name: String, offset: usize },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// The query state maps to a cluster the graph was not built from.
    #[error("state `{0}` is not represented in the graph")]
    StateNotInGraph(String),

    #[error("states are not connected")]
    NotConnected,

    /// A caller broke an internal precondition; this is a programming bug,
    /// not a query answer.
    #[error("contract violation: {0}")]
    Contract(&'static str),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid graph file: {0}")]
    InvalidGraph(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
