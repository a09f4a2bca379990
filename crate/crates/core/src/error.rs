use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("{d} does not divide {k}")]
    NotADivisor { d: u64, k: u64 },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("enumeration budget exceeded: {needed} items > budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("root-of-unity sum for c_{d}({s}) is not within tolerance of an integer (residual {residual:e})")]
    NotNearInteger { d: u64, s: i64, residual: f64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("linear system is rank deficient: rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("solution is not integral")]
    NonIntegral,
    #[error("ceiling exceeded: {what} = {value} > {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        value: u64,
        ceiling: u64,
    },
    #[error("malformed b-file at line {line}: {reason}")]
    MalformedBFile { line: usize, reason: String },
    #[error("offset mismatch: {0}")]
    OffsetMismatch(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
