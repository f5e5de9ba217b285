use thiserror::Error;

/// Errors raised by the distribution backends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pattern: {0}")]
    InvalidSpec(String),

    #[error("success probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    /// Waiting times are infinite with positive probability when p is 0 or 1.
    #[error("waiting-time distributions need 0 < p < 1 (got p = {0})")]
    DegenerateProbability(f64),

    #[error("probability entry {value:e} at index {index} is negative beyond roundoff")]
    NegativeMass { index: usize, value: f64 },

    #[error("enumeration budget exceeded: {requested} trials requested, at most {limit} allowed")]
    EnumerationBudget { requested: usize, limit: usize },

    #[error("Fibonacci word index {0} exceeds the supported maximum of 40")]
    FibIndex(usize),

    #[error("moment solve coefficient {0:e} vanishes")]
    SingularMomentSolve(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
