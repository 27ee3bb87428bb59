use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("invalid norm exponent p = {0} (need p >= 1 or p = inf)")]
    InvalidExponent(f64),

    #[error("norm weights must be finite and strictly positive")]
    InvalidWeight,

    #[error("invalid norm specification: {0}")]
    InvalidNorm(String),

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("point set is empty")]
    EmptySet,

    #[error("point set needs at least two distinct points")]
    TrivialSet,

    #[error("dimension {dim} exceeds solver cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("invalid solver options: {0}")]
    InvalidOptions(String),

    #[error("tolerance must be finite and positive")]
    InvalidTolerance,

    #[error("negative radius {0}")]
    NegativeRadius(f64),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("oracle minimizer sits on the search box boundary; enlarge the box")]
    OracleBoundary,

    #[error("rejection sampler acceptance ratio {ratio:.2e} below {min:.0e}")]
    ThinIntersection { ratio: f64, min: f64 },

    #[error("sample of the two-ball set is empty")]
    EmptySample,
}
