use thiserror::Error;

/// Errors produced by the anchor-distance toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cost matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weights sum to {sum}, outside tolerance of 1")]
    WeightSumOutOfTolerance { sum: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },

    #[error("invalid exponent p = {0}; supported values are 1 and 2")]
    InvalidExponent(u32),

    #[error("the sweep-line evaluator only supports p = 1 (got p = {0})")]
    MethodExponentMismatch(u32),

    #[error("solver did not converge after {iterations} iterations")]
    NotConverged { iterations: usize },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("assignment has zero variance")]
    DegenerateVariance,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
