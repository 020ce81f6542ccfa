use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("division by a non-monic polynomial")]
    NonMonicDivisor,
    #[error("resultant of a zero polynomial")]
    ZeroInput,
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("value {0} too small to build the requested side")]
    InsufficientV(i64),
    #[error("polynomial is inseparable modulo p")]
    Inseparable,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("leaf is already exact")]
    AlreadyExact,
    #[error("iteration cap exceeded ({0} rounds)")]
    IterationCapExceeded(usize),
    #[error("precision {got} below required {need}")]
    PrecisionTooLow { got: i64, need: i64 },
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomials share a root")]
    SharedRoot,
    #[error("polynomials have different degrees")]
    DegreeMismatch,
    #[error("inconsistent level data: {0}")]
    InconsistentLevels(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
