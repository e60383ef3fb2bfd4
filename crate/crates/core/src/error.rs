use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("values from different arithmetic modes were combined")]
    ModeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a polynomial in symbolic lambda")]
    NotLambdaMode,
    #[error("value is not exactly divisible by the requested divisor")]
    NotDivisible,
    #[error("series is not a delta series (needs c_0 = 0 and a nonzero rational c_1)")]
    NotDelta,
    #[error("series constant term is not a rational unit")]
    NotUnit,
    #[error("series precondition violated: {0}")]
    Precondition(String),
    #[error("insufficient truncation order: needed {needed}, available {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("E[Y] must be nonzero")]
    ZeroMean,
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("unsupported random variable kind for this operation: {0}")]
    UnsupportedKind(String),
    #[error("umbral composition needs sequence entry {0}")]
    MissingSequenceEntry(usize),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("independent computations disagree: {0}")]
    Disagreement(String),
    #[error("basis entry {0} does not have exact degree {0}")]
    NonTriangularBasis(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
