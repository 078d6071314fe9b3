//! Error type shared by all solver modules.

use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An evaluation was requested outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure broke down (singular pivot, non-finite value, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
