//! Classification of Frobenius orbits `x, x^p, x^{p^2}, ...` at finite precision.

use crate::error::{PadicError, Result};
use crate::linalg::UMatrix;
use crate::padic::{PadicScalar, PrecisionContext};
use crate::scalar::{Scalar, ScalarRing};
use crate::witt::ExtScalar;

/// Values the Frobenius `x -> x^p` acts on.
pub trait FrobeniusOrbit: Clone + PartialEq {
    fn precision(&self) -> PrecisionContext;

    fn sigma(&self) -> Self;

    fn is_zero_at_precision(&self) -> bool;

    /// Valuation of the value, `None` for zero.
    fn lead_valuation(&self) -> Option<i64>;
}

impl FrobeniusOrbit for PadicScalar {
    fn precision(&self) -> PrecisionContext {
        self.ctx()
    }

    fn sigma(&self) -> Self {
        self.frobenius()
    }

    fn is_zero_at_precision(&self) -> bool {
        self.is_zero()
    }

    fn lead_valuation(&self) -> Option<i64> {
        self.valuation()
    }
}

impl FrobeniusOrbit for ExtScalar {
    fn precision(&self) -> PrecisionContext {
        self.ext_ring().ctx()
    }

    fn sigma(&self) -> Self {
        Scalar::pow(self, self.ext_ring().ctx().p())
    }

    fn is_zero_at_precision(&self) -> bool {
        Scalar::is_zero(self)
    }

    fn lead_valuation(&self) -> Option<i64> {
        Scalar::valuation(self)
    }
}

impl<S: Scalar> FrobeniusOrbit for UMatrix<S> {
    fn precision(&self) -> PrecisionContext {
        self.ring().ctx()
    }

    fn sigma(&self) -> Self {
        self.frobenius()
    }

    fn is_zero_at_precision(&self) -> bool {
        self.is_zero()
    }

    fn lead_valuation(&self) -> Option<i64> {
        self.valuation()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitClass<T> {
    /// Some iterate vanishes mod `p^m`; `steps` is the first such iterate.
    TopNilpotent { steps: u32 },
    /// `sigma^N(x) = x` with `N` minimal.
    Periodic(u32),
    /// The orbit settles on a cycle of length `period` that does not contain `x`;
    /// `limit` is the stable value of `sigma^{jN}(x)`.
    QuasiPeriodic { period: u32, limit: T },
    ChaosAtPrecision,
}

impl<T> OrbitClass<T> {
    pub fn label(&self) -> &'static str {
        match self {
            OrbitClass::TopNilpotent { .. } => "top-nilpotent",
            OrbitClass::Periodic(_) => "periodic",
            OrbitClass::QuasiPeriodic { .. } => "quasi-periodic",
            OrbitClass::ChaosAtPrecision => "chaos-at-precision",
        }
    }
}

/// Number of Frobenius steps allowed when looking for cycles of length up to `n_max`.
pub fn orbit_budget(ctx: PrecisionContext, n_max: u32) -> u32 {
    ctx.m() * n_max.max(1) + 4
}

/// Iterates `sigma` from `x` and records the first repeat within distance `n_max`.
///
/// Returns the full trajectory and, when found, `(k, N)` with `y_{k+N} = y_k`.
pub(crate) fn find_cycle<T: FrobeniusOrbit>(
    x: &T,
    n_max: u32,
    budget: u32,
) -> (Vec<T>, Option<(usize, usize)>) {
    let mut orbit = vec![x.clone()];
    let n_max = n_max.max(1) as usize;
    for _ in 0..budget {
        let next = orbit.last().expect("orbit is never empty").sigma();
        let len = orbit.len();
        let hit = (1..=n_max.min(len))
            .find(|&period| orbit[len - period] == next)
            .map(|period| (len - period, period));
        orbit.push(next);
        if hit.is_some() {
            return (orbit, hit);
        }
    }
    (orbit, None)
}

/// Classifies the orbit of `x` (which must lie in the unit ball) under the Frobenius.
pub fn classify_orbit<T: FrobeniusOrbit>(x: &T, n_max: u32) -> Result<OrbitClass<T>> {
    if let Some(v) = x.lead_valuation() {
        if v < 0 {
            return Err(PadicError::OutsideUnitBall { valuation: v });
        }
    }
    let budget = orbit_budget(x.precision(), n_max);
    let (orbit, cycle) = find_cycle(x, n_max, budget);
    if let Some(steps) = orbit.iter().position(FrobeniusOrbit::is_zero_at_precision) {
        return Ok(OrbitClass::TopNilpotent {
            steps: steps as u32,
        });
    }
    match cycle {
        Some((0, period)) => Ok(OrbitClass::Periodic(period as u32)),
        Some((start, period)) => {
            let first = start.div_ceil(period) * period;
            Ok(OrbitClass::QuasiPeriodic {
                period: period as u32,
                limit: orbit[first].clone(),
            })
        }
        None => Ok(OrbitClass::ChaosAtPrecision),
    }
}
