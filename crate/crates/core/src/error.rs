use thiserror::Error;

/// Failure classes shared by every module. The CLI maps each class to a
/// distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input is well-formed but needs machinery this toolkit does not have
    /// (e.g. a non-rational critical value).
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A degree or size guard tripped.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
