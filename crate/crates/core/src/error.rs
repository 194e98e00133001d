use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (supported: 1..=8)")]
    UnsupportedDegree(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator polynomial does not divide x^{n} - 1")]
    InvalidGenerator { n: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("rows {0} and {1} do not commute")]
    CommutationViolation(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("registry error: {0}")]
    Registry(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedDegree(_) => "unsupported_degree",
            Error::DivisionByZero => "division_by_zero",
            Error::Parse(_) => "parse",
            Error::InvalidGenerator { .. } => "invalid_generator",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::OutOfRange(_) => "out_of_range",
            Error::CommutationViolation(..) => "commutation_violation",
            Error::Precondition(_) => "precondition",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::Registry(_) => "registry",
        }
    }
}
