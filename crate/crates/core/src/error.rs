//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact integer result does not fit into the requested integer type.
    #[error("integer overflow: {0}")]
    Overflow(String),

    /// An iterative method failed to reach its target accuracy.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A polynomial degree exceeds the configured safety cap.
    #[error("degree {got} exceeds the configured maximum {max}")]
    DegreeCap { got: u32, max: u32 },

    /// The operation does not support the given parameter combination.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

/// Convenience alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, CoreError>;
