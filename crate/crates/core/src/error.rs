use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty distribution")]
    EmptyDistribution,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("invalid simplex: a_{index} = {value} must be below N = {n}")]
    EntryTooLarge { index: usize, value: u64, n: u64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("M undefined; B is identically 0 coordinate-degenerate")]
    DegenerateRow,

    #[error("point budget exceeded: estimated {estimate} points, cap is {cap}")]
    CapExceeded { estimate: u128, cap: u64 },

    #[error("proposition hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),

    #[error("internal error: {0}")]
    Internal(String),
}
