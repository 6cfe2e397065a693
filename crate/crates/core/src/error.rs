use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("continued fraction of a negative rational: {0}")]
    NegativeInput(String),
    #[error("index {index} out of range for expansion of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{0} is not a prime >= 5")]
    NotOddPrime(u64),
    #[error("n = {0} is too small, need n >= 2")]
    DenominatorTooSmall(u64),
    #[error("{0} is too large for the enumerator")]
    TooLarge(u64),
    #[error("solution ({x}, {y}, {z}) has {count} coordinates divisible by {p}")]
    BadPartition {
        p: u64,
        x: u128,
        y: u128,
        z: u128,
        count: usize,
    },
    #[error("lattice count mismatch at N = {n}: brute {brute}, sliced {sliced}")]
    LatticeMismatch { n: u64, brute: u64, sliced: u64 },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
