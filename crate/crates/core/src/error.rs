use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("rational function has a pole at {at}")]
    Pole { at: String },
    #[error("polynomial has no positive real root")]
    NoPositiveRoot,
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("singular linear system")]
    Singular,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid cell: {}", .0.join("; "))]
    InvalidCell(Vec<String>),
    #[error("unsupported branching number {0} (only 2 is supported here)")]
    UnsupportedTheta(usize),
    #[error("edge budget exceeded: {edges} edges requested, budget {budget}")]
    BudgetExceeded { edges: u128, budget: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point {point} is too close to 1 for order {max_order}")]
    PointTooClose { point: f64, max_order: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
