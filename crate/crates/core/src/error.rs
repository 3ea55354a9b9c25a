use thiserror::Error;

/// Errors raised by the experiment library.
///
/// Every variant maps to one failure class named in the module contracts; the
/// CLI prints [`Error::name`] on stderr so scripts can match on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot certify a real value: {0}")]
    UncertifiableReal(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("grid of {grid} points is too coarse for N = {n} (need at least {min})")]
    GridTooCoarse { grid: usize, n: u64, min: usize },
    #[error("phase precision loss: error bound {bound:e} at n = {n}")]
    PrecisionLoss { bound: f64, n: u64 },
    #[error("scale N = {n} exceeds the brute-force limit {limit}")]
    ScaleTooLarge { n: u64, limit: u64 },
    #[error("set too sparse: fewer than {wanted} elements below {ceiling}")]
    SetTooSparse { wanted: usize, ceiling: u64 },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("length mismatch: function has {function} values, slice has N = {slice}")]
    LengthMismatch { function: usize, slice: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a non-principal character")]
    PrincipalChar,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UncertifiableReal(_) => "UncertifiableReal",
            Error::InvalidParam(_) => "InvalidParam",
            Error::DomainError(_) => "DomainError",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::PrecisionLoss { .. } => "PrecisionLoss",
            Error::ScaleTooLarge { .. } => "ScaleTooLarge",
            Error::SetTooSparse { .. } => "SetTooSparse",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::PrincipalChar => "PrincipalChar",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
