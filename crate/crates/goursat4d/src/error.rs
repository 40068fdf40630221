//! Library error type.

use thiserror::Error;

/// Errors produced by grid construction, field operations, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two objects that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A field file does not start with the expected magic line.
    #[error("bad magic in {path}: expected {expected:?}, found {found:?}")]
    BadMagic {
        path: String,
        expected: String,
        found: String,
    },

    /// A field file payload does not match the size announced by its header.
    #[error("size mismatch in {path}: header implies {expected} values, payload has {found}")]
    SizeMismatch {
        path: String,
        expected: usize,
        found: usize,
    },

    /// A field contains NaN or infinite values.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A field or problem file could not be parsed.
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::GridMismatch(msg.into())
    }
}
