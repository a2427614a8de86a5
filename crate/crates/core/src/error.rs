use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MhdError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("negative time {0}")]
    NegativeTime(f64),
    #[error("blow-up detected at t = {t} ({reason})")]
    Blowup { t: f64, reason: String },
    #[error("step budget of {0} steps exhausted")]
    StepBudget(usize),
    #[error("empty ledger")]
    EmptyLedger,
    #[error("snapshot at t = {got} precedes last recorded t = {last}")]
    OutOfOrder { last: f64, got: f64 },
    #[error("zero denominator: {0}")]
    ZeroDenominator(&'static str),
    #[error("heat-weighted norm diverges: nonzero coefficient at the zero mode")]
    DivergentHeatNorm,
    #[error("grid too large for direct convolution ({0} > 8)")]
    GridTooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, MhdError>;
