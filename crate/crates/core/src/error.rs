use thiserror::Error;

/// Errors raised by the algebraic engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),

    #[error("ambiguous simplex name `{0}` (present in several dimensions)")]
    AmbiguousSimplex(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid simplicial set: {0}")]
    InvalidSet(String),

    #[error("simplicial identity violated: {0}")]
    IdentityViolated(String),

    #[error("simplicial set `{0}` is not {1}-reduced")]
    NotReduced(String, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("operation undefined in degree 0")]
    DegreeZero,

    #[error("`{0}` does not support cone constructions")]
    NoConeStructure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element is not a cycle")]
    NotACycle,

    #[error("no preimage found with words of length <= {0}")]
    BoundExhausted(usize),

    #[error("degree {degree} exceeds the configured maximum {max}")]
    DepthLimit { degree: usize, max: usize },

    #[error("word is degenerate or empty")]
    DegenerateWord,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
