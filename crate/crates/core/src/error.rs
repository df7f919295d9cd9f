use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// Allocation would exceed what the kernel is willing to reserve.
    #[error("resource error: {0}")]
    Resource(String),

    #[error("encoding error: symbol {0:#04x} has no codeword")]
    UnknownSymbol(u8),

    #[error("decoding error: {0}")]
    Decode(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
