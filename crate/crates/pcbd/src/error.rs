//! Error type shared by every module, with the CLI exit-code mapping.

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A requested size exceeds a configured limit.
    #[error("size error: {0}")]
    Size(String),

    /// A generator parameter is invalid (e.g. an even Paley modulus).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// No Hadamard matrix of the requested order is available.
    #[error("unsupported Hadamard order {order}; available orders: {available}")]
    UnsupportedOrder { order: usize, available: String },

    /// A matrix that should be Hadamard failed verification.
    #[error("verification error: {0}")]
    NotHadamard(String),

    /// Matrix or vector dimensions do not agree.
    #[error("shape error: {0}")]
    Shape(String),

    /// A column index list is invalid.
    #[error("index error: {0}")]
    Index(String),

    /// A level pair or matrix entry cannot be coded.
    #[error("coding error: {0}")]
    Coding(String),

    /// A zero difference has no canonical level pair.
    #[error("ambiguity error: {0}")]
    Ambiguity(String),

    /// A block layout does not fit the design.
    #[error("layout error: {0}")]
    Layout(String),

    /// Parameters violate a construction's class conditions.
    #[error("class error: {0}")]
    Class(String),

    /// A matrix that must be invertible is singular.
    #[error("singularity error: {0}")]
    Singular(String),

    /// An exhaustive search would exceed its candidate budget.
    #[error("budget exceeded: {required} candidates required, budget is {budget}")]
    Budget { required: String, budget: u64 },

    /// Input/output failure.
    #[error("io error: {0}")]
    Io(String),

    /// A file could not be parsed.
    #[error("format error: {0}")]
    Format(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status used by the CLI for this error.
    ///
    /// 2 = validation or class error, 3 = unsupported Hadamard order,
    /// 4 = oracle budget refusal, 1 = I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedOrder { .. } => 3,
            Error::Budget { .. } => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn class(msg: impl Into<String>) -> Self {
        Error::Class(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
