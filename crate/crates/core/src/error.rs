use thiserror::Error;

/// Errors raised by the exact-arithmetic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient field mismatch")]
    FieldMismatch,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be positive, got {0}")]
    NonPositive(i128),
    #[error("summand set must not be empty")]
    EmptySummands,
    #[error("summand must be positive, got {0}")]
    NonPositiveSummand(i128),
    #[error("{j} divides no summand, so it is not a wave index")]
    NotAWaveIndex { j: u64 },
    #[error("eulerian recursion requires rho != 1 (rho^{exponent} == 1)")]
    RootIsUnity { exponent: u64 },
    #[error("wave {j}, class {residue}: degree {degree} exceeds bound {bound}")]
    DegreeBound {
        j: u64,
        residue: u64,
        degree: usize,
        bound: usize,
    },
    #[error("trace is not rational (internal error)")]
    NonRationalTrace,
    #[error("value {0} is not an integer")]
    NonIntegral(String),
    #[error("evaluation point must be nonnegative, got {0}")]
    NegativeArgument(String),
    #[error("malformed quasipolynomial: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
