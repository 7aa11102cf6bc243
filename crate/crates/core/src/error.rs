use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by an exact zero")]
    DivisionByZero,
    #[error("factor with zero leading coefficient in a denominator")]
    MalformedFactor,
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: &'static str,
    },
    #[error("n must be even, got {0}")]
    OddRank(usize),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("not an even-signed permutation: {0}")]
    InvalidSignedPerm(String),
    #[error("not a Kostant representative for the parabolic")]
    NotKostantRep,
    #[error("weight {weight} is not dominant: {violated}")]
    NotDominant { weight: String, violated: String },
    #[error("mu_min = 0: the last entry of some embedding vanishes")]
    ZeroMuMin,
    #[error("weight {0} is not regular")]
    NotRegular(String),
    #[error("parity mismatch: m = {m} is not congruent to eps = {eps} mod 2")]
    ParityMismatch { m: i64, eps: u8 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("L-factor has a pole at s = {0}")]
    Pole(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
