use thiserror::Error;

/// Errors raised by the arithmetic, encoding and protocol layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-canonical encoding: value is not below the modulus")]
    NonCanonicalEncoding,

    #[error("operands belong to different fields")]
    ParamsMismatch,

    #[error("inverse of zero{}", fmt_index(.index))]
    ZeroInverse { index: Option<usize> },

    #[error("point is not on the curve")]
    InvalidPoint,

    #[error("projective point has Z = 0{}", fmt_index(.index))]
    ZCoordinateZero { index: Option<usize> },

    #[error("pairing input is not a group element")]
    InvalidPairingInput,

    #[error("invalid setup: {0}")]
    InvalidSetup(&'static str),

    #[error("polynomial degree {degree} exceeds setup degree {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("wire format error: {0}")]
    WireFormat(String),

    #[error("invalid field parameters: {0}")]
    InvalidParams(&'static str),

    #[error("private key must be in [1, n-1]")]
    InvalidPrivateKey,

    #[error("empty input")]
    EmptyInput,
}

fn fmt_index(index: &Option<usize>) -> String {
    match index {
        Some(i) => format!(" at index {i}"),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
