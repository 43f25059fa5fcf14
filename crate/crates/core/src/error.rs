use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by the zero function at position {pos}")]
    DivisionByZero { pos: usize },

    #[error("exponent at position {pos} must be a non-negative integer literal")]
    BadExponent { pos: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("zero function")]
    ZeroFunction,

    #[error("zero vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{field}: {msg}")]
    InvalidSpec { field: String, msg: String },

    #[error("malformed spec document: {0}")]
    MalformedDocument(String),

    #[error("place must be a monic irreducible polynomial or \"inf\": {0}")]
    InvalidPlace(String),

    #[error("no dominant root: max |alpha_ij| = {0} must exceed 1")]
    NoDominantRoot(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate system: {0}")]
    Degenerate(String),
}
