use thiserror::Error;

/// Errors raised by the arithmetic kernels and the evaluators built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements live in different fields")]
    FieldMismatch,
    #[error("invalid field configuration: {0}")]
    InvalidField(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("negative Frobenius twist on a non-perfect representation")]
    NegativeTwist,
    #[error("no root modulo v: {0}")]
    NoRoot(String),
    #[error("multiple root modulo v: {0}")]
    MultipleRoot(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
