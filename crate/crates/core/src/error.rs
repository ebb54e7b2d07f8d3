use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("width mismatch: expected {expected}, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("face {0} is not a canonical coset representative")]
    NonCanonical(String),
    #[error("invalid classical code: {0}")]
    InvalidCode(String),
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("codewords do not form a basis of the quotienting code")]
    NotABasis,
    #[error("input chain is not a cycle")]
    NotACycle,
    #[error("input chain is not a boundary")]
    NotABoundary,
    #[error("input cochain is not a cocycle")]
    NotACocycle,
    #[error("input cochain is not a coboundary")]
    NotACoboundary,
    #[error("input chain is not symmetric under the quotienting code")]
    NotSymmetric,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid syndrome: {0}")]
    InvalidSyndrome(String),
    #[error("syndromes of the two corrections differ")]
    SyndromeMismatch,
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}
