use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit codes: usage and parse problems are
/// `2`, resource bounds are `3`.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MipError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource bound exceeded: {what} needs {needed}, bound is {bound}")]
    Resource {
        what: String,
        needed: u64,
        bound: u64,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl MipError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        MipError::Precondition(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        MipError::Usage(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        MipError::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn resource(what: impl Into<String>, needed: u64, bound: u64) -> Self {
        MipError::Resource {
            what: what.into(),
            needed,
            bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, MipError>;
