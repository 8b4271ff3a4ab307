//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Solvers refuse instances whose validity flag is not set.
    #[error("instance is not validated; run Instance::validate first")]
    Unvalidated,

    #[error("{what} exceeds the configured limit ({value} > {limit})")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("deadline exceeded")]
    Timeout,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A structural guarantee the algorithms rely on was violated. Seeing
    /// this on validated input is a bug, not a user error.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
