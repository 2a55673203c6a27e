use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("unsupported field size: {0}")]
    Unsupported(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector is not a physical state or outcome")]
    ZeroVector,
    #[error("spin observable needs two distinct outcomes")]
    IdenticalOutcomes,
    #[error("observable is not spin-like (needs exactly two outcomes)")]
    NotSpinLike,
    #[error("outcome vectors do not form a basis")]
    NotABasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
