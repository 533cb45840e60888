use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input of length {len} exceeds the configured maximum {max}")]
    Capacity { len: usize, max: usize },

    #[error("invalid edit script at op {index}: {reason}")]
    InvalidScript { index: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("input is not a permutation: symbol {symbol} repeats")]
    NotPermutation { symbol: u32 },

    #[error("embedding dimension too small: need m >= {needed}, got {got}")]
    InsufficientDimension { needed: f64, got: u32 },

    #[error("estimator failed: {0}")]
    Estimator(String),

    #[error("generation failed after {attempts} attempts: {detail}")]
    GenerationFailed { attempts: usize, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
