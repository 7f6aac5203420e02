use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The requested field cannot be represented (characteristic, degree or size).
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    /// An arithmetic operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A constructor precondition failed; the message names the condition.
    #[error("parameter error: {0}")]
    Param(String),
    /// A computation would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Resource(String),
    /// Two independent computations of the same object disagreed.
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    /// The closed-form result is only stated for a parameter range not covering the input.
    #[error("outside the range of the closed form: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! param {
    ($($arg:tt)*) => { $crate::error::Error::Param(alloc::format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use param;
