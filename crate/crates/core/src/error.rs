use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpucError {
    #[error("invalid sequence: coefficient at index {index} has modulus {modulus} (must be < 1)")]
    InvalidSequence { index: u64, modulus: f64 },

    #[error("index {index} out of range: explicit sequence has {len} coefficients")]
    IndexOutOfRange { index: u64, len: usize },

    #[error("invalid coefficient: |Φ| = {modulus} is not strictly inside the unit disk")]
    InvalidCoefficient { modulus: f64 },

    #[error("invalid rotation: |τ| = {modulus}, expected a unit complex number")]
    InvalidRotation { modulus: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("quadrature did not reach tolerance: estimated error {estimate:e} > {tolerance:e} after {panels} panels on [{lo}, {hi}]")]
    Accuracy {
        estimate: f64,
        tolerance: f64,
        panels: usize,
        lo: f64,
        hi: f64,
    },

    #[error("moment matrix lost positive definiteness at order {order} (pivot {pivot:e})")]
    Rank { order: usize, pivot: f64 },

    #[error("eigen-solver failed to converge for N = {n} after {iterations} iterations (condition estimate {condition:e})")]
    Eigen {
        n: usize,
        iterations: usize,
        condition: f64,
    },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl OpucError {
    /// Whether the failure is numerical (accuracy, rank, convergence) rather than a bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            OpucError::Accuracy { .. } | OpucError::Rank { .. } | OpucError::Eigen { .. }
        )
    }
}

impl From<std::io::Error> for OpucError {
    fn from(e: std::io::Error) -> Self {
        OpucError::Io(e.to_string())
    }
}

impl From<csv::Error> for OpucError {
    fn from(e: csv::Error) -> Self {
        OpucError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, OpucError>;
