use thiserror::Error;

/// Errors raised across the library.
///
/// The variants are coarse on purpose: callers (the CLI in particular) map
/// each one onto a distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input: bad spec, bad alphabet, bad matrix shape.
    #[error("validation error: {0}")]
    Validation(String),
    /// A number does not fit the requested representation length.
    #[error("range error: {0}")]
    Range(String),
    /// Cipher text or token stream does not split into whole blocks.
    #[error("frame error: {0}")]
    Frame(String),
    /// Decoding produced something that cannot be a valid plaintext.
    #[error("decode error: {0}")]
    Decode(String),
    /// Text format could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn parse(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
