use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("unsupported field {0}: {1}")]
    UnsupportedField(String, String),
    #[error("{0} lies outside [-1, 1]")]
    OutOfUnitInterval(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot factor {0}: exceeds the supported size")]
    FactorizationLimit(String),
    #[error("no density record has a nonzero numerator")]
    NoFit,
    /// An exact identity or a cross-check between two independent methods
    /// failed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
