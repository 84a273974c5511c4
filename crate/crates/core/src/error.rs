use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the forecasting pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("day index {day} out of range (calendar has {days} days)")]
    DayOutOfRange { day: usize, days: usize },

    #[error("hour index {hour} out of range (calendar has {hours} hours)")]
    HourOutOfRange { hour: usize, hours: usize },

    #[error("invalid calendar: {0}")]
    Calendar(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Data(String),

    #[error("missing value at hour {hour} cannot be imputed from one week earlier")]
    Unimputable { hour: usize },

    #[error("invalid exchange rate for day {day}: {message}")]
    ExchangeRate { day: usize, message: String },

    #[error("series too short: need at least {required} observations, got {available}")]
    TooShort { required: usize, available: usize },

    #[error("series has zero variance")]
    ConstantSeries,

    #[error("innovation variance became non-positive at order {order}")]
    NonPositiveVariance { order: usize },

    #[error("lag-zero covariance matrix is singular")]
    SingularCovariance,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient data: study needs {required} days, data covers {available}")]
    InsufficientData { required: usize, available: usize },

    #[error("model {model} failed on roll {roll}: {source}")]
    Roll {
        model: String,
        roll: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("output {0} already exists (use --force to overwrite)")]
    OutputExists(PathBuf),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
