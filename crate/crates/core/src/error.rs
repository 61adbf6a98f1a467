use thiserror::Error;

/// Errors raised by the codecs, parsers and the container format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("corrupt input: {0}")]
    CorruptInput(String),
    #[error("unsupported format: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptInput(msg.into())
}
