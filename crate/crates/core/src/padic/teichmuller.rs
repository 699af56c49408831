use super::context::PrecisionContext;
use super::scalar::PadicScalar;
use crate::error::{PadicError, Result};

/// `sigma^N(x) = x^(p^N)` for `|x| <= 1`, by `N` rounds of square-and-multiply.
pub fn frobenius_step(x: &PadicScalar, n: u32) -> Result<PadicScalar> {
    if let Some(v) = x.valuation() {
        if v < 0 {
            return Err(PadicError::OutsideUnitBall { valuation: v });
        }
    }
    let mut y = *x;
    for _ in 0..n {
        if y.is_zero() {
            break;
        }
        y = y.frobenius();
    }
    Ok(y)
}

/// The Teichmüller representative of `residue mod p`: the unique `w` with
/// `w^p = w` and `w = residue (mod p)`, found by iterating `x -> x^p`.
pub fn teichmuller_lift(residue: u64, ctx: PrecisionContext) -> Result<PadicScalar> {
    if residue >= ctx.p() {
        return Err(PadicError::ResidueOutOfRange {
            residue,
            p: ctx.p(),
        });
    }
    let mut x = PadicScalar::from_residue(residue, ctx);
    // each round gains one p-adic digit of agreement
    for _ in 0..=ctx.max_iters() {
        let next = x.frobenius();
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(PadicError::BudgetExhausted(ctx.max_iters()))
}

/// Expansion `x = sum_i digits[i] * p^(lead_valuation + i)` with Teichmüller digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeichDigits {
    pub lead_valuation: i64,
    pub digits: Vec<PadicScalar>,
}

impl TeichDigits {
    /// Residues mod p of the digits, i.e. their indices among the Teichmüller points.
    pub fn indices(&self) -> Vec<u64> {
        self.digits
            .iter()
            .map(|d| d.residue_mod_p().expect("digits lie in the unit ball"))
            .collect()
    }

    /// `sum_i digits[i] * p^i`, the unit part of the expansion.
    pub fn reassemble_unit(&self) -> PadicScalar {
        let ctx = self.digits[0].ctx();
        self.digits
            .iter()
            .enumerate()
            .fold(PadicScalar::zero(ctx), |acc, (i, d)| acc.add(&d.shift(i as i64)))
    }

    /// `sum_i digits[i] * p^(lead_valuation + i)`.
    pub fn reassemble(&self) -> PadicScalar {
        self.reassemble_unit().shift(self.lead_valuation)
    }
}

/// Peels Teichmüller digits off `x`: `d_i = w(y_i mod p)`, `y_{i+1} = (y_i - d_i) / p`.
///
/// Exactly `m` digits are produced; zero has lead valuation 0 and all-zero digits.
pub fn teichmuller_digits(x: &PadicScalar) -> Result<TeichDigits> {
    let ctx = x.ctx();
    let m = ctx.m() as usize;
    let lead_valuation = x.valuation().unwrap_or(0);
    let table = if ctx.p() <= 1 << 12 {
        (0..ctx.p())
            .map(|r| teichmuller_lift(r, ctx))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let mut y = PadicScalar::from_residue(x.unit(), ctx);
    let mut digits = Vec::with_capacity(m);
    for i in 0..m {
        let r = y.residue_mod_p()?;
        let d = match table.get(r as usize) {
            Some(d) => *d,
            None => teichmuller_lift(r, ctx)?,
        };
        digits.push(d);
        if i + 1 < m {
            y = y.sub(&d).shift(-1);
        }
    }
    Ok(TeichDigits {
        lead_valuation,
        digits,
    })
}
