use thiserror::Error;

/// Errors surfaced by the library and the command line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("field error: {0}")]
    Field(String),

    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),

    #[error("not a separable function field: a = 0 and b' = 0")]
    NotSeparable,

    #[error("model is not in the expected normal form: {0}")]
    NotNormalized(String),

    #[error("wrong model type: {0}")]
    WrongType(String),

    #[error("not geometrically elliptic: delta = 0")]
    NotGeometricallyElliptic,

    #[error("fiber is non-reduced; every point is singular")]
    NonReduced,

    #[error("normal form obstructed: {0}")]
    Obstructed(String),

    #[error("malformed series specification: {0}")]
    MalformedSpec(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("sweep has {count} points, exceeding the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// Process exit code for the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) | Error::Obstructed(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
