use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` covers violated preconditions (a non-prime modulus, a zero
/// inverse, an inadmissible triple, equal points where distinct ones are
/// required). `Capacity` means the requested object is larger than the
/// configured bound. `Parse` is for malformed textual input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
