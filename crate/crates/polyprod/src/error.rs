//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,

    #[error("partial factorization: cofactor {cofactor} resisted rho after {restarts} restarts")]
    PartialFactorization { cofactor: String, restarts: u32 },

    #[error("modulus must be odd")]
    EvenModulus,

    #[error("modulus must be an odd prime, got {0}")]
    ModulusNotOddPrime(u64),

    #[error("power exponent must be at least 2, got {0}")]
    BadExponent(i64),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate reduction: {p} divides every coefficient of the polynomial")]
    DegenerateReduction { p: u64 },

    #[error("polynomial has degree 0, no discriminant")]
    ConstantPolynomial,

    #[error("repeated roots: discriminant vanishes")]
    RepeatedRoots,

    #[error("root iteration did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        /// Best iterate seen, as (re, im) pairs.
        best: Vec<(f64, f64)>,
    },

    #[error("P({i}) = 0, the product vanishes from index {i} on")]
    ZeroProductValue { i: i64 },

    #[error("{0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("no primes in range [{lo}, {hi}]")]
    EmptyPrimeRange { lo: u64, hi: u64 },

    #[error("sieve prime set is empty; increase z (tried z = {z})")]
    EmptySievePrimeSet { z: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
