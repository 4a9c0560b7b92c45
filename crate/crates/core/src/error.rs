use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arc {left}-{right} is out of range for n={n}")]
    ArcOutOfRange { n: u32, left: u32, right: u32 },
    #[error("{0} is not a set partition (repeated endpoint)")]
    NotASetPartition(String),
    #[error("node counts differ: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("matrix kinds {0} and {1} cannot be multiplied")]
    KindMismatch(String, String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("evaluation at q=0 of a polynomial with negative exponents")]
    ZeroEvaluation,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
