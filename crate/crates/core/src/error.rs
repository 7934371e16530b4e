use thiserror::Error;

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{value} exceeds the supported prime bound {bound}")]
    PrimeOutOfRange { value: u64, bound: u64 },

    #[error("invalid prime range {lo}..={hi}")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("p = {p} is not in the required residue class ({expected} mod 4)")]
    WrongResidueClass { p: u64, expected: u8 },

    #[error("p = {0} is excluded for this operation")]
    ExcludedPrime(u64),

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("determinant is not multilinear: interpolation gives {interpolated}, direct evaluation gives {direct}")]
    NotMultilinear {
        interpolated: Box<Rational>,
        direct: Box<Rational>,
    },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cyclotomic elements over different primes ({0} vs {1})")]
    ModulusMismatch(u64, u64),

    #[error("internal assumption violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
