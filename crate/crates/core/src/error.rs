use thiserror::Error;

/// Errors raised by the numerical kernels and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{0}")]
    Domain(String),
    /// An argument was NaN or infinite.
    #[error("{name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
    /// A simulation or sweep configuration is unusable.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
