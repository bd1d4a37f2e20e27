use thiserror::Error;

/// Errors raised by the library. Every operation is pure, so an error always
/// means the inputs were outside the domain an operation is defined on, or an
/// exact check that must hold did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration guard exceeded: {size} items (limit {limit})")]
    EnumerationGuard { size: String, limit: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certification failed at {step}: {detail}")]
    Certification { step: String, detail: String },

    #[error("unknown identifier: {0}")]
    Unknown(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
