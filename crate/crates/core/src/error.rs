use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count {0} outside supported range {1}..={2}")]
    VarCountOutOfRange(usize, usize, usize),

    #[error("bit length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid hex string {0:?}")]
    BadHex(String),

    #[error("empty input")]
    EmptyInput,

    #[error("unknown security level {0} (expected one of 80, 128, 160, 192, 224, 256)")]
    UnknownLevel(u32),

    #[error("invalid parameters for level {level}: {reason}")]
    BadParams { level: u32, reason: String },

    #[error("invalid polynomial exponent list {0:?}")]
    BadPolynomial(String),

    #[error("keystream limit reached: at most 2^64 bits per key/IV pair")]
    KeystreamCapExceeded,

    #[error("infeasible tap search sizes: kappa={kappa}, m={m}")]
    InfeasibleSearch { kappa: u32, m: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
