use thiserror::Error;

use crate::membership::{DegeneracyReport, ViolationCertificate};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("duplicate node label {0:?}")]
    DuplicateNode(String),

    #[error("unknown node label {0:?}")]
    UnknownNode(String),

    #[error("loop edge at node {0:?}")]
    LoopEdge(String),

    #[error("duplicate edge ({0:?}, {1:?})")]
    DuplicateEdge(String, String),

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    /// The prescribed mode set contains adjacent nodes.
    #[error("mode set is not independent: {0}")]
    NotIndependent(DegeneracyReport),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("empty input")]
    Empty,

    #[error("point {index} is not in the probability simplex")]
    NotInSimplex { index: usize },

    #[error("{what} budget exceeded: limit {limit}, reached {reached}")]
    BudgetExceeded {
        what: &'static str,
        limit: u64,
        reached: u64,
    },

    #[error("distribution is not in the polytope: {0}")]
    NotMember(Box<ViolationCertificate>),

    #[error("relation is not a strict partial order (cycle through {0:?})")]
    NotAPartialOrder(String),

    #[error("rejection sampling gave up after {0} attempts")]
    RetryBudget(usize),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
