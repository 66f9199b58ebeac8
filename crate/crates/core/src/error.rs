use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("point outside chart: distance {distance} exceeds chart radius {radius}")]
    OutOfChart { distance: f64, radius: f64 },
    #[error("empirical measure has no mass")]
    EmptyMeasure,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
