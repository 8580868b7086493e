use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("resource cap exceeded: {what} is {actual}, limit is {limit}")]
    ResourceCap {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("vocabulary mismatch")]
    VocabularyMismatch,

    #[error("atom `{0}` is not in the vocabulary")]
    UnknownAtom(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
