use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension m = {m}: {reason}")]
    UnsupportedDimension { m: usize, reason: &'static str },

    #[error("grade {grade} out of range for m = {m}")]
    GradeOutOfRange { grade: usize, m: usize },

    #[error("expected a pure vector (grade-1) multivector")]
    NotAVector,

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grids differ")]
    GridMismatch,

    #[error("field is not radial (max shell deviation {deviation:e})")]
    NotRadial { deviation: f64 },

    #[error("field is identically zero")]
    ZeroField,

    #[error("not enough usable nodes for the fit: {found} < {required}")]
    InsufficientNodes { found: usize, required: usize },

    #[error("grid under-resolves the kernel: h = {step} > {limit}")]
    UnderResolved { step: f64, limit: f64 },

    #[error("hypothesis not satisfied: {0}")]
    HypothesisFailed(String),

    #[error("linear algebra failure: {0}")]
    Numerical(String),

    #[error("malformed field data: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
