use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller broke a precondition: mismatched dimensions, unknown qubit
    /// label, non-Hermitian input where one is required.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A physical parameter lies outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical method was configured below its exactness threshold.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
