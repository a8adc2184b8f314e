use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at s = {0}")]
    Pole(i64),

    #[error("iteration did not converge after {iterations} steps (last iterate {last})")]
    NoConvergence { iterations: usize, last: String },

    #[error("quadrature did not converge: estimate {estimate}, error bound {bound}")]
    Quadrature { estimate: String, bound: String },

    #[error("tail bound {bound} exceeds tolerance {tolerance}; increase the truncation height")]
    Tail { bound: String, tolerance: String },

    #[error("result not certified: {0}")]
    Uncertified(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
