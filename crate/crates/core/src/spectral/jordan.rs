use crate::error::{PadicError, Result};
use crate::linalg::UMatrix;
use crate::orbit::{find_cycle, orbit_budget};
use crate::scalar::{Scalar, ScalarRing};

use super::idempotent::log_p_ceil;

/// `A = A_s + A_n` with `A_s` fixed by `sigma^N` and `A_n` topologically nilpotent.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair<S: Scalar> {
    pub semisimple: UMatrix<S>,
    pub nilpotent: UMatrix<S>,
    pub period: u32,
    /// Frobenius steps before the orbit of `A` entered its cycle.
    pub settle_steps: u32,
    /// Frobenius steps that send `A_n` to zero mod `p^m`.
    pub steps_to_kill: u32,
}

impl<S: Scalar> JordanPair<S> {
    /// `A = A_s + A_n`, `sigma^N(A_s) = A_s` and `sigma^t(A_n) = 0`.
    pub fn verify(&self, a: &UMatrix<S>) -> bool {
        self.semisimple.add(&self.nilpotent) == *a
            && self.semisimple.frobenius_pow(self.period) == self.semisimple
            && self.nilpotent.frobenius_pow(self.steps_to_kill).is_zero()
    }
}

fn jordan_budget<S: Scalar>(a: &UMatrix<S>, n_max: u32) -> u32 {
    let ctx = a.ring().ctx();
    orbit_budget(ctx, n_max) + log_p_ceil(ctx.p(), a.dim()) + 1
}

/// Canonical Jordan decomposition of an integral matrix, with `A_s` the stable value
/// of `sigma^{jN}(A)` for the least period `N <= n_max` of the eventual cycle.
pub fn jordan_decompose<S: Scalar>(a: &UMatrix<S>, n_max: u32) -> Result<JordanPair<S>> {
    jordan_decompose_from(a, a, n_max)
}

/// As [`jordan_decompose`], but runs the Frobenius iteration from `start`, which
/// should be an iterate of `A` perturbed inside the algebra generated by `A`.
pub fn jordan_decompose_from<S: Scalar>(
    a: &UMatrix<S>,
    start: &UMatrix<S>,
    n_max: u32,
) -> Result<JordanPair<S>> {
    for x in [a, start] {
        if let Some(v) = x.valuation() {
            if v < 0 {
                return Err(PadicError::OutsideUnitBall { valuation: v });
            }
        }
    }
    let budget = jordan_budget(a, n_max);
    let (orbit, cycle) = find_cycle(start, n_max, budget);
    let Some((settle, period)) = cycle else {
        return Err(PadicError::PeriodExceeded {
            n_max,
            iterations: budget,
        });
    };
    let semisimple = orbit[settle.div_ceil(period) * period].clone();
    let nilpotent = a.sub(&semisimple);
    let mut y = nilpotent.clone();
    let mut steps_to_kill = 0;
    while !y.is_zero() {
        if steps_to_kill == budget {
            return Err(PadicError::BudgetExhausted(budget));
        }
        y = y.frobenius();
        steps_to_kill += 1;
    }
    Ok(JordanPair {
        semisimple,
        nilpotent,
        period: period as u32,
        settle_steps: settle as u32,
        steps_to_kill,
    })
}
