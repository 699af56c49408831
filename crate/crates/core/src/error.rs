use thiserror::Error;

use crate::norm::Norm;

/// Why digit peeling stopped before producing a full Hermite expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiteFailure {
    /// The semisimple part was peeled off but the remainder is not divisible by p.
    NilpotentResidue,
    /// No fixed point of the period-N Frobenius appeared within the iteration budget.
    NoFixedPoint,
    /// The remainder failed to commute with the spectral projectors of earlier digits.
    NonCommuting,
}

impl std::fmt::Display for HermiteFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HermiteFailure::NilpotentResidue => write!(f, "nilpotent residue"),
            HermiteFailure::NoFixedPoint => write!(f, "no Frobenius fixed point"),
            HermiteFailure::NonCommuting => write!(f, "non-commuting remainder"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("element has valuation {valuation} and leaves the unit ball")]
    OutsideUnitBall { valuation: i64 },
    #[error("residue {residue} is out of range for p = {p}")]
    ResidueOutOfRange { residue: u64, p: u64 },
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by an element that is zero at precision")]
    DivisionByZero,
    #[error("matrix is not invertible over the unit ball")]
    NotInvertible,
    #[error("enumeration bound exceeded: {p}^{degree} > 2^20")]
    EnumerationBound { p: u64, degree: u32 },
    #[error("period {period} is not available in a ring of residue degree {degree}")]
    PeriodUnavailable { period: u32, degree: u32 },
    #[error("input is not idempotent modulo p (defect {defect})")]
    NotIdempotentModP { defect: Norm },
    #[error("not a Teichmüller element of period {period}: sigma^N defect {defect}")]
    NotTeichmuller { period: u32, defect: Norm },
    #[error("Lagrange denominator is not a unit")]
    NonUnitDenominator,
    #[error("not a Hermite operator: {reason} at digit {stage} (defect {defect})")]
    NotHermite {
        stage: usize,
        defect: Norm,
        reason: HermiteFailure,
    },
    #[error("no period <= {n_max} found within {iterations} Frobenius iterations")]
    PeriodExceeded { n_max: u32, iterations: u32 },
    #[error("iteration budget of {0} exhausted on a convergent path")]
    BudgetExhausted(u32),
    #[error("wave function has norm {0}, expected 1")]
    NotNormalized(Norm),
    #[error("spectral measure is invalid: {0}")]
    InvalidMeasure(String),
}

pub type Result<T> = std::result::Result<T, PadicError>;
