use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be odd and at least 3")]
    BadModulus(u64),
    #[error("modulus {0} exceeds the supported bound 2^31")]
    ModulusTooLarge(u64),
    #[error("{value} is divisible by {modulus}")]
    ZeroResidue { value: i64, modulus: u64 },
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },
    #[error("prime {p} must be congruent to {expected} mod 4")]
    WrongResidueClass { p: u64, expected: u64 },
    #[error("no representation of {0} as a sum of two squares")]
    NoTwoSquares(u64),
    #[error("n = {0} must be even and at least 2")]
    BadSize(u64),
    #[error("n = {n} exceeds the exhaustive bound {bound}; use a bounded search")]
    ExhaustiveBound { n: u64, bound: u64 },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("formula value {numerator}/16 is not an integer")]
    NonIntegral { numerator: i64 },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("invalid scan: {0}")]
    InvalidScan(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
