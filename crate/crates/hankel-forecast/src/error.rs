/// Errors returned by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A dimension or length constraint was violated.
    #[error("shape error: {0}")]
    Shape(String),

    /// A series failed validation (too short, non-finite entries).
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    /// A finite-rank model failed validation (zero or duplicate roots,
    /// vanishing leading coefficient).
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// A weight vector failed validation (non-positive or non-finite entries).
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    /// A 1-based index fell outside its admissible range.
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// An operation's hypothesis was not met (e.g. rank too large for the
    /// available data).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computation left the representable double range.
    #[error("numerical overflow: {0}")]
    Overflow(String),

    /// The estimated recurrence has a numerically vanishing leading
    /// coefficient; extending the series would divide by ~0.
    #[error("degenerate recurrence: {0}")]
    DegenerateRecurrence(String),

    /// A data file could not be parsed.
    #[error("parse error in {path} at row {row}: {message}")]
    Parse {
        path: String,
        row: usize,
        message: String,
    },

    /// A required dataset file is absent.
    #[error("missing dataset: {0}")]
    MissingDataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
