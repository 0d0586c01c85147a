use thiserror::Error;

/// Errors raised by the certified computations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: u32, what: String },
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("pole: reciprocal gamma ball contains zero at {0}")]
    Pole(String),
    #[error("boundary zero: image ball contains 0 on the contour near {near}")]
    BoundaryZero { near: String },
    #[error("newton iteration diverged for seed {seed}")]
    NewtonDivergence { seed: String },
    #[error("grid condition {0} failed")]
    ConditionFailed(u8),
    #[error("vanishing order inconclusive at coefficient {index}")]
    Inconclusive { index: usize },
    #[error("exact answer requested on ball-valued input")]
    InexactInput,
    #[error("lambda too small: c*d*log(H) = {needed} > Z*log(Z) = {got}")]
    LambdaTooSmall { needed: f64, got: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("report kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: String, got: String },
}

pub type Result<T> = std::result::Result<T, Error>;
