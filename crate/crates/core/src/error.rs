use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("instance has no items")]
    EmptyInstance,
    #[error("item {index} has non-positive time {time}")]
    NonPositiveTime { index: usize, time: f64 },
    #[error("budget must be positive and finite, got {0}")]
    InvalidBudget(f64),
    #[error("sum of squared times {sum} exceeds budget {budget}")]
    BudgetExceeded { sum: f64, budget: f64 },
    #[error("marks and times differ in length ({marks} vs {times})")]
    LengthMismatch { marks: usize, times: usize },
    #[error("index {index} out of range for {n} items")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("stage {stage} outside 1..={d}")]
    InvalidStage { stage: usize, d: usize },
    #[error("stage {stage}: sin^2 alpha = {value} exceeds 1 (corrupted set sizes)")]
    DegenerateStage { stage: usize, value: f64 },
    #[error("k = {0} is not a positive multiple of 4")]
    InvalidK(u32),
    #[error("position ({row}, {col}) is not a disagreement position")]
    NotADisagreementPosition { row: usize, col: u64 },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
