use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time series must contain at least one element")]
    EmptySeries,

    #[error("time series element {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("sample must contain at least one time series")]
    EmptySample,

    #[error("expected {expected} weights, got {actual}")]
    WeightCount { expected: usize, actual: usize },

    #[error("weight {index} is invalid ({value}); weights must be finite and nonnegative")]
    InvalidWeight { index: usize, value: f64 },

    #[error("at least one weight must be positive")]
    AllWeightsZero,

    #[error("warping path is not valid for order {m} x {n}")]
    InvalidPath { m: usize, n: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("element {index} is not binary ({value})")]
    NotBinary { index: usize, value: f64 },

    #[error("binary time series is not condensed")]
    NotCondensed,

    #[error("first series must be at least as long as the second ({first} < {second})")]
    LengthOrder { first: usize, second: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "instance too large: {cells} table cells, ~{work} segment evaluations \
         (limits: {max_cells} cells, {max_work} evaluations)"
    )]
    TooLarge {
        cells: u64,
        work: u64,
        max_cells: u64,
        max_work: u64,
    },

    #[error("combinatorial budget exceeded: {required} > {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable category of the error.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TooLarge { .. } | Error::BudgetExceeded { .. } => "resource",
            Error::Io(_) => "io",
            Error::Parse(_) | Error::Csv(_) | Error::Json(_) => "parse",
            Error::InvalidArgument(_) => "invalid-argument",
            _ => "invalid-input",
        }
    }

    pub fn is_resource(&self) -> bool {
        self.kind() == "resource"
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
