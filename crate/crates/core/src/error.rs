use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite argument {0}")]
    NonFinite(f64),
    #[error("argument {0} is outside the numeric domain |x| <= 50 (Bi would overflow)")]
    OverflowDomain(f64),
    #[error("solution coefficients (c1, c2) must not both be zero")]
    DegenerateSolution,
    #[error("shift mismatch: expected {expected}, found {found}")]
    ShiftMismatch {
        expected: Box<BigRational>,
        found: Box<BigRational>,
    },
    #[error("equal shifts {0}: use the equal-eigenvalue recurrence")]
    EqualShifts(BigRational),
    #[error("quadrature did not converge within {evaluations} evaluations (error estimate {error_estimate:e})")]
    NonConvergence {
        evaluations: usize,
        error_estimate: f64,
    },
    #[error("integrand is not finite at x = {0}")]
    NonFiniteIntegrand(f64),
    #[error("integrand diverges at +infinity: solution has a Bi component")]
    DivergentIntegrand,
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}
