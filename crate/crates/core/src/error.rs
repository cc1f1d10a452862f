use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has no components")]
    Empty,
    #[error("every entry is zero; cannot normalize")]
    AllZero,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("components sum to {sum}, not 1")]
    NotNormalized { sum: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("target dimension {target} is smaller than current dimension {current}")]
    TargetTooSmall { target: usize, current: usize },
    #[error("x is not majorized by y")]
    NotMajorized,
    #[error("catalysis cannot help for this y (fewer than two components strictly between its extremes)")]
    NotUseful,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("x is not trumped by y with the given catalyst")]
    NotTrumped,
    #[error("majorization of the tensor products is not strict (tight prefixes {0:?})")]
    NotStrict(Vec<usize>),
    #[error("catalyst is uniform on its support and cannot catalyze anything")]
    UniformCatalyst,
    #[error("cannot rationalize to a probability vector: {0}")]
    NotNormalizable(String),
    #[error("cannot parse {input:?} as a rational number")]
    Parse { input: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("constructed object failed exact re-verification: {0}")]
    VerificationFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
