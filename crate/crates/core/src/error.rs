use thiserror::Error;

/// Failure modes shared across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A function was called with structurally invalid input (bad kind, empty grid, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// Evaluation at a singular locus (the equator of the sphere).
    #[error("singularity: {0}")]
    Singular(String),
    /// Two routes that must agree did not.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;
