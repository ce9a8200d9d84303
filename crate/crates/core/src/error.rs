use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested observable or limit is degenerate (vanishing norm).
    #[error("degenerate: {0}")]
    Degenerate(String),
    /// A sweep or run configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// The operation is not supported for these inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
