use crate::error::{PadicError, Result};
use crate::linalg::UMatrix;
use crate::norm::Norm;
use crate::scalar::{Scalar, ScalarRing};

/// Iterates `y -> sigma^N(y)` until it is fixed, returning the fixed point and the
/// number of steps taken.
pub(crate) fn frobenius_limit<S: Scalar>(
    start: &UMatrix<S>,
    period: u32,
    budget: u32,
) -> std::result::Result<(UMatrix<S>, u32), Norm> {
    let mut y = start.clone();
    let mut last_defect = Norm::ONE;
    for step in 0..=budget {
        let next = y.frobenius_pow(period);
        if next == y {
            return Ok((y, step));
        }
        last_defect = next.sub(&y).norm();
        y = next;
    }
    Err(last_defect)
}

/// Smallest `t` with `p^t >= n`.
pub(crate) fn log_p_ceil(p: u64, n: usize) -> u32 {
    let mut t = 0;
    let mut acc = 1u128;
    while acc < n as u128 {
        acc *= p as u128;
        t += 1;
    }
    t
}

fn idempotent_budget<S: Scalar>(a: &UMatrix<S>) -> u32 {
    let ctx = a.ring().ctx();
    ctx.max_iters() + log_p_ceil(ctx.p(), a.dim()) + 1
}

fn check_idempotent_mod_p<S: Scalar>(a: &UMatrix<S>) -> Result<()> {
    if let Some(v) = a.valuation() {
        if v < 0 {
            return Err(PadicError::OutsideUnitBall { valuation: v });
        }
    }
    let defect = a.mul(a).sub(a).norm();
    if defect > Norm::from_valuation(1) {
        return Err(PadicError::NotIdempotentModP { defect });
    }
    Ok(())
}

/// The idempotent fixed by `sigma` that reduces to `a` mod p, as the limit of
/// `a, a^p, a^{p^2}, ...`.
///
/// The limit only depends on `a` through its reduction and the commutative
/// algebra generated by `a`.
pub fn lift_idempotent<S: Scalar>(a: &UMatrix<S>) -> Result<UMatrix<S>> {
    check_idempotent_mod_p(a)?;
    let budget = idempotent_budget(a);
    frobenius_limit(a, 1, budget)
        .map(|(pi, _)| pi)
        .map_err(|_| PadicError::BudgetExhausted(budget))
}

/// Lifts a complete orthogonal family of idempotents mod p to an exact one.
///
/// Members are lifted in order inside the corner left by the earlier lifts, and the
/// last member is the complement, so the result is complete and orthogonal even when
/// the representatives do not commute. Members that already commute lift to the
/// same idempotents as [`lift_idempotent`].
pub fn lift_orthogonal_family<S: Scalar>(family: &[UMatrix<S>]) -> Result<Vec<UMatrix<S>>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let n = first.dim();
    let identity = UMatrix::identity(ring.clone(), n);
    let mut sum = identity.sub(&identity);
    for a in family {
        check_idempotent_mod_p(a)?;
        sum = sum.add(a);
    }
    let mod_p = Norm::from_valuation(1);
    if sum.sub(&identity).norm() > mod_p {
        return Err(PadicError::NotIdempotentModP {
            defect: sum.sub(&identity).norm(),
        });
    }
    let mut lifted: Vec<UMatrix<S>> = Vec::with_capacity(family.len());
    let mut rest = identity.clone();
    for a in &family[..family.len() - 1] {
        let corner = rest.mul(a).mul(&rest);
        let pi = lift_idempotent(&corner)?;
        rest = rest.sub(&pi);
        lifted.push(pi);
    }
    lifted.push(rest);
    Ok(lifted)
}
