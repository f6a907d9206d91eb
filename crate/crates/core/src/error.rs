//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point, matrix, or vector does not match the expected dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    /// Malformed or non-finite input data.
    #[error("invalid input: {0}")]
    Input(String),

    /// Invalid parameter or configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An elliptic landscape whose coefficients do not single out a valley axis.
    #[error("no unique valley axis: {0}")]
    AmbiguousValley(String),

    /// A coordinate map that fails its forward/inverse round-trip check.
    #[error("homeomorphism failed round-trip check: {0}")]
    InvalidHomeomorphism(String),

    /// A ratio comparison where neither side carries information.
    #[error("indeterminate comparison: {0}")]
    Indeterminate(String),
}
