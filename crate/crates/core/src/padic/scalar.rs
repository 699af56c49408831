use std::fmt;
use std::hash::{Hash, Hasher};

use super::context::{add_mod, inv_mod, mul_mod, pow_mod, PrecisionContext};
use crate::error::{PadicError, Result};
use crate::norm::Norm;

const ZERO_VALUATION: i64 = i64::MAX;

/// An element of `Q_p` in canonical form `p^v * u` at precision `m`.
///
/// The unit `u` is stored modulo `p^(m-v)` when `v >= 0` (so the value is an
/// exact residue of `Z/p^m`) and modulo `p^m` when `v < 0` (relative precision
/// `m`). Anything with `v >= m` collapses to the distinguished zero.
#[derive(Clone, Copy)]
pub struct PadicScalar {
    ctx: PrecisionContext,
    valuation: i64,
    unit: u64,
}

fn valuation_u64(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn valuation_i128(mut n: i128, p: i128) -> (i64, i128) {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

impl PadicScalar {
    pub fn zero(ctx: PrecisionContext) -> Self {
        PadicScalar {
            ctx,
            valuation: ZERO_VALUATION,
            unit: 0,
        }
    }

    pub fn one(ctx: PrecisionContext) -> Self {
        Self::canonical(ctx, 0, 1)
    }

    /// Canonical form of `p^v * unit` for a unit residue.
    fn canonical(ctx: PrecisionContext, v: i64, unit: u64) -> Self {
        let m = ctx.m() as i64;
        if v >= m {
            return Self::zero(ctx);
        }
        let modulus = if v >= 0 {
            ctx.pow_p((m - v) as u32)
        } else {
            ctx.modulus()
        };
        PadicScalar {
            ctx,
            valuation: v,
            unit: unit % modulus,
        }
    }

    /// `p^shift * s` for an arbitrary residue `s` (zero or divisible by p allowed).
    fn from_shifted(ctx: PrecisionContext, shift: i64, s: u64) -> Self {
        if s == 0 {
            return Self::zero(ctx);
        }
        let t = valuation_u64(s, ctx.p());
        Self::canonical(ctx, shift + t as i64, s / ctx.p().pow(t))
    }

    /// The element of `Z/p^m` with residue `r`.
    pub fn from_residue(r: u64, ctx: PrecisionContext) -> Self {
        Self::from_shifted(ctx, 0, r % ctx.modulus())
    }

    pub fn from_integer(n: i128, ctx: PrecisionContext) -> Self {
        let r = n.rem_euclid(ctx.modulus() as i128) as u64;
        Self::from_residue(r, ctx)
    }

    /// Image of `numerator / denominator` in `Q_p` at precision `m`.
    pub fn from_rational(numerator: i128, denominator: i128, ctx: PrecisionContext) -> Result<Self> {
        if denominator == 0 {
            return Err(PadicError::ZeroDenominator);
        }
        if numerator == 0 {
            return Ok(Self::zero(ctx));
        }
        let p = ctx.p() as i128;
        let modulus = ctx.modulus() as i128;
        let (vn, un) = valuation_i128(numerator, p);
        let (vd, ud) = valuation_i128(denominator, p);
        let un = un.rem_euclid(modulus) as u64;
        let ud = ud.rem_euclid(modulus) as u64;
        let inv = inv_mod(ud, ctx.modulus()).expect("p-free denominator is a unit");
        Ok(Self::canonical(ctx, vn - vd, mul_mod(un, inv, ctx.modulus())))
    }

    /// Builds `p^valuation * unit`; `unit` must be prime to p.
    pub fn from_parts(valuation: i64, unit: u64, ctx: PrecisionContext) -> Result<Self> {
        if unit.is_multiple_of(ctx.p()) {
            return Err(PadicError::InvalidPrecision(format!(
                "unit {unit} is divisible by p = {}",
                ctx.p()
            )));
        }
        Ok(Self::canonical(ctx, valuation, unit))
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    /// Same value in another context over the same prime; extra digits are zero.
    pub fn with_context(&self, ctx: PrecisionContext) -> Self {
        assert_eq!(ctx.p(), self.ctx.p(), "contexts over different primes");
        if self.is_zero() {
            return Self::zero(ctx);
        }
        Self::canonical(ctx, self.valuation, self.unit)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation == ZERO_VALUATION
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == 0
    }

    /// `v_p(x)`, or `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// The stored unit residue (0 for zero).
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn norm(&self) -> Norm {
        match self.valuation() {
            None => Norm::ZERO,
            Some(v) => Norm::from_valuation(v),
        }
    }

    /// The residue in `Z/p^m`, for elements of the unit ball.
    pub fn to_residue(&self) -> Result<u64> {
        match self.valuation() {
            None => Ok(0),
            Some(v) if v < 0 => Err(PadicError::OutsideUnitBall { valuation: v }),
            Some(v) => Ok(mul_mod(self.ctx.pow_p(v as u32), self.unit, self.ctx.modulus())),
        }
    }

    /// Reduction modulo p, for elements of the unit ball.
    pub fn residue_mod_p(&self) -> Result<u64> {
        Ok(self.to_residue()? % self.ctx.p())
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.ctx.same_ring(&other.ctx),
            "mixing scalars of different precision contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let m = self.ctx.m() as i64;
        let w = self.valuation.min(other.valuation);
        let width = if w >= 0 { m - w } else { m } as u32;
        let modulus = self.ctx.pow_p(width);
        let term = |x: &Self| -> u64 {
            let gap = x.valuation - w;
            if gap >= width as i64 {
                0
            } else {
                mul_mod(x.unit % modulus, self.ctx.pow_p(gap as u32), modulus)
            }
        };
        let s = add_mod(term(self), term(other), modulus);
        Self::from_shifted(self.ctx, w, s)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let m = self.ctx.m() as i64;
        let modulus = if self.valuation >= 0 {
            self.ctx.pow_p((m - self.valuation) as u32)
        } else {
            self.ctx.modulus()
        };
        PadicScalar {
            unit: modulus - self.unit,
            ..*self
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        let v = self.valuation + other.valuation;
        Self::canonical(self.ctx, v, mul_mod(self.unit, other.unit, self.ctx.modulus()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let inv = inv_mod(self.unit, self.ctx.modulus()).expect("canonical unit is invertible");
        Ok(Self::canonical(self.ctx, -self.valuation, inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Multiplication by `p^k` (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::canonical(self.ctx, self.valuation + k, self.unit)
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one(self.ctx);
        }
        if self.is_zero() {
            return *self;
        }
        let v = match self.valuation.checked_mul(e as i64) {
            Some(v) => v,
            None if self.valuation > 0 => return Self::zero(self.ctx),
            None => panic!("valuation overflow in power"),
        };
        if v >= self.ctx.m() as i64 {
            return Self::zero(self.ctx);
        }
        Self::canonical(self.ctx, v, pow_mod(self.unit, e, self.ctx.modulus()))
    }

    /// One application of the Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p())
    }
}

impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_ring(&other.ctx) && self.valuation == other.valuation && self.unit == other.unit
    }
}

impl Eq for PadicScalar {}

impl Hash for PadicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.p().hash(state);
        self.ctx.m().hash(state);
        self.valuation.hash(state);
        self.unit.hash(state);
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation() {
            None => write!(f, "0"),
            Some(0) => write!(f, "{}", self.unit),
            Some(v) => write!(f, "{}^{}*{}", self.ctx.p(), v, self.unit),
        }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: u32) -> PrecisionContext {
        PrecisionContext::new(p, m).unwrap()
    }

    #[test]
    fn rational_half_in_z3() {
        let x = PadicScalar::from_rational(1, 2, ctx(3, 4)).unwrap();
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.unit(), 41);
    }

    #[test]
    fn rational_edge_cases() {
        let c = ctx(3, 4);
        assert!(PadicScalar::from_rational(0, 1, c).unwrap().is_zero());
        let nine = PadicScalar::from_rational(9, 1, c).unwrap();
        assert_eq!((nine.valuation(), nine.unit()), (Some(2), 1));
        assert_eq!(
            PadicScalar::from_rational(1, 0, c),
            Err(PadicError::ZeroDenominator)
        );
        let third = PadicScalar::from_rational(2, 3, c).unwrap();
        assert_eq!((third.valuation(), third.unit()), (Some(-1), 2));
        assert!(PadicScalar::from_rational(81, 1, c).unwrap().is_zero());
        let neg = PadicScalar::from_rational(-1, 1, c).unwrap();
        assert_eq!(neg.unit(), 80);
    }

    #[test]
    fn negative_valuation_arithmetic() {
        let c = ctx(5, 3);
        let a = PadicScalar::from_rational(1, 5, c).unwrap();
        let b = PadicScalar::from_rational(-1, 5, c).unwrap();
        assert!(a.add(&b).is_zero());
        let one = PadicScalar::one(c);
        let s = a.add(&one);
        assert_eq!(s, PadicScalar::from_rational(6, 5, c).unwrap());
        assert_eq!(a.mul(&PadicScalar::from_integer(5, c)), one);
        assert_eq!(a.inverse().unwrap(), PadicScalar::from_integer(5, c));
    }

    #[test]
    fn precision_window_truncates() {
        let c = ctx(5, 3);
        let five = PadicScalar::from_integer(5, c);
        assert!(five.pow(5).is_zero());
        assert!(five.mul(&five).mul(&five).is_zero());
        assert_eq!(five.mul(&five).to_residue().unwrap(), 25);
    }

    #[test]
    fn canonical_units_are_reduced() {
        let c = ctx(3, 4);
        let x = PadicScalar::from_integer(3 * 40, c);
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.unit(), 40 % 27);
        assert_eq!(x.to_residue().unwrap(), 120 % 81);
        assert_eq!(x, PadicScalar::from_integer(120 + 81, c));
    }
}
