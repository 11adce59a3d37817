//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the toolkit.
///
/// The CLI maps these onto exit codes: configuration and I/O problems
/// exit with 1, physics argument/domain violations with 2, numerical
/// failures with 3.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation precondition (wrong sign, range, order).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Inputs are individually valid but the physics has no solution here.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical procedure failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Scenario or material file failed to parse or validate.
    #[error("config error: {0}")]
    Config(String),

    /// Underlying file I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
