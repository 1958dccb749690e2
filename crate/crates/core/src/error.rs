//! Error types shared across the engine.

use thiserror::Error;

/// Errors produced by the safety engine and its numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates a documented precondition (bad mode index,
    /// coefficient sum off unity, non-positive length, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request falls outside the tabulated exposure-limit domain
    /// (wavelength band or exposure duration). The message names the
    /// violated bound.
    #[error("unsupported domain: {0}")]
    Domain(String),

    /// A numerical routine failed to converge; the message carries the
    /// partial value and residual estimate.
    #[error("numerics failure: {0}")]
    Numerics(String),
}

pub type Result<T> = std::result::Result<T, Error>;
