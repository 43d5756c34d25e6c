use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid bounds [{lower}, {upper}]: lower must be strictly below upper")]
    InvalidBounds { lower: f64, upper: f64 },

    #[error("unknown function `{name}` (valid: {valid})")]
    UnknownFunction { name: String, valid: String },

    #[error("unknown algorithm `{name}` (valid: {valid})")]
    UnknownAlgorithm { name: String, valid: String },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("iteration {itr} is past the schedule horizon {itr_max}")]
    IterationOutOfRange { itr: usize, itr_max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the filesystem rather than by the inputs.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
