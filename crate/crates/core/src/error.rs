use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("degenerate mode: {0}")]
    DegenerateMode(String),
    #[error("singular matrix: {0}")]
    Singular(&'static str),
    #[error("root finder did not converge (relative residuals {residuals:?})")]
    NoConvergence { residuals: Vec<f64> },
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    /// True for failures of an iterative numeric procedure, as opposed to bad input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::Inconsistent(_) | Error::InvariantViolated(_))
    }
}
