//! Ladder operators on truncated coefficient spaces: the Kochubei pair on Mahler
//! coordinates of `C(Z_p, Q_p)` and the Euler pair on the one-variable Tate algebra.

use std::marker::PhantomData;

use rand::Rng;

use crate::norm::Norm;
use crate::padic::{PadicScalar, PrecisionContext};
use crate::scalar::vector_norm;

/// Coordinates against the Mahler basis `P_n(x) = binom(x, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mahler;

/// Coordinates against the monomials `X^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial;

/// A coefficient vector of length `M`; its norm is the max coefficient norm.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector<B> {
    ctx: PrecisionContext,
    coeffs: Vec<PadicScalar>,
    basis: PhantomData<B>,
}

pub type MahlerVector = CoeffVector<Mahler>;
pub type TateVector = CoeffVector<Monomial>;

impl<B> CoeffVector<B> {
    pub fn new(ctx: PrecisionContext, coeffs: Vec<PadicScalar>) -> Self {
        assert!(!coeffs.is_empty(), "truncation length must be positive");
        CoeffVector {
            ctx,
            coeffs,
            basis: PhantomData,
        }
    }

    pub fn from_integers(ctx: PrecisionContext, coeffs: &[i128]) -> Self {
        Self::new(
            ctx,
            coeffs.iter().map(|&c| PadicScalar::from_integer(c, ctx)).collect(),
        )
    }

    pub fn zero(ctx: PrecisionContext, len: usize) -> Self {
        Self::new(ctx, vec![PadicScalar::zero(ctx); len])
    }

    /// The `n`-th basis vector.
    pub fn basis(ctx: PrecisionContext, len: usize, n: usize) -> Self {
        let mut v = Self::zero(ctx, len);
        v.coeffs[n] = PadicScalar::one(ctx);
        v
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn norm(&self) -> Norm {
        vector_norm(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PadicScalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, PadicScalar::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, PadicScalar::sub)
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    fn zip(&self, other: &Self, f: impl Fn(&PadicScalar, &PadicScalar) -> PadicScalar) -> Self {
        assert_eq!(self.len(), other.len(), "truncation lengths differ");
        Self::new(
            self.ctx,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        )
    }
}

/// Operator output together with a flag for coefficients pushed past the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<V> {
    pub value: V,
    pub lost: bool,
}

/// A linear operator acting on coefficient sequences.
pub trait CoefficientOperator {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>>;

    fn apply<B>(&self, f: &CoeffVector<B>) -> Truncated<CoeffVector<B>> {
        let out = self.apply_coeffs(f.ctx, &f.coeffs);
        Truncated {
            value: CoeffVector::new(f.ctx, out.value),
            lost: out.lost,
        }
    }
}

fn int(n: usize, ctx: PrecisionContext) -> PadicScalar {
    PadicScalar::from_integer(n as i128, ctx)
}

/// `d_{n+1} = w(n) c_n`, reporting a nonzero top coefficient as lost.
fn raise_by(
    ctx: PrecisionContext,
    c: &[PadicScalar],
    weight: impl Fn(usize) -> PadicScalar,
) -> Truncated<Vec<PadicScalar>> {
    let len = c.len();
    let mut d = vec![PadicScalar::zero(ctx); len];
    for n in 0..len - 1 {
        d[n + 1] = c[n].mul(&weight(n));
    }
    let lost = !c[len - 1].mul(&weight(len - 1)).is_zero();
    Truncated { value: d, lost }
}

/// `d_n = w(n) c_{n+1}`.
fn lower_by(
    ctx: PrecisionContext,
    c: &[PadicScalar],
    weight: impl Fn(usize) -> PadicScalar,
) -> Vec<PadicScalar> {
    let len = c.len();
    let mut d = vec![PadicScalar::zero(ctx); len];
    for n in 0..len - 1 {
        d[n] = c[n + 1].mul(&weight(n));
    }
    d
}

/// Kochubei creation `(a+ f)(x) = x f(x - 1)`: `P_n -> (n + 1) P_{n+1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KochubeiRaise;

/// Kochubei annihilation `(a- f)(x) = f(x + 1) - f(x)`: `P_n -> P_{n-1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KochubeiLower;

/// Shift `(a* f)(x) = f(x + 1)`: `P_n -> P_n + P_{n-1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Shift;

/// Differentiation `d/dX` on monomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct TateLower;

/// Creation `X + h(d/dX)` on monomials; `h` holds the coefficients of `h(D)`
/// and must lie in the unit ball. The default `h = 0` is multiplication by `X`.
#[derive(Debug, Clone, Default)]
pub struct TateRaise {
    pub h: Vec<PadicScalar>,
}

impl CoefficientOperator for KochubeiRaise {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>> {
        raise_by(ctx, c, |n| int(n + 1, ctx))
    }
}

impl CoefficientOperator for KochubeiLower {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>> {
        Truncated {
            value: lower_by(ctx, c, |_| PadicScalar::one(ctx)),
            lost: false,
        }
    }
}

impl CoefficientOperator for Shift {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>> {
        let down = lower_by(ctx, c, |_| PadicScalar::one(ctx));
        Truncated {
            value: c.iter().zip(&down).map(|(a, b)| a.add(b)).collect(),
            lost: false,
        }
    }
}

impl CoefficientOperator for TateLower {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>> {
        Truncated {
            value: lower_by(ctx, c, |k| int(k + 1, ctx)),
            lost: false,
        }
    }
}

impl CoefficientOperator for TateRaise {
    fn apply_coeffs(&self, ctx: PrecisionContext, c: &[PadicScalar]) -> Truncated<Vec<PadicScalar>> {
        let Truncated { value: mut d, lost } = raise_by(ctx, c, |_| PadicScalar::one(ctx));
        let mut derivative = c.to_vec();
        for hj in &self.h {
            for (slot, term) in d.iter_mut().zip(&derivative) {
                *slot = slot.add(&term.mul(hj));
            }
            derivative = TateLower.apply_coeffs(ctx, &derivative).value;
        }
        Truncated { value: d, lost }
    }
}

pub fn kochubei_raise(f: &MahlerVector) -> Truncated<MahlerVector> {
    KochubeiRaise.apply(f)
}

pub fn kochubei_lower(f: &MahlerVector) -> MahlerVector {
    KochubeiLower.apply(f).value
}

pub fn shift(f: &MahlerVector) -> MahlerVector {
    Shift.apply(f).value
}

/// `A = a+ a-`, diagonal with eigenvalue `n` on `P_n`.
pub fn number_operator(f: &MahlerVector) -> MahlerVector {
    kochubei_raise(&kochubei_lower(f)).value
}

/// `Delta = X d/dX`, multiplying the degree-`k` coefficient by `k`.
pub fn euler_operator(f: &TateVector) -> TateVector {
    TateRaise::default().apply(&TateLower.apply(f).value).value
}

/// `|[L, R] - 1|` on basis vectors and output indices below `len - 1`.
pub fn commutator_defect(
    lower: &impl CoefficientOperator,
    raise: &impl CoefficientOperator,
    ctx: PrecisionContext,
    len: usize,
) -> Norm {
    assert!(len >= 2, "need at least two coefficients");
    let mut defect = Norm::ZERO;
    for j in 0..len - 1 {
        let mut e = vec![PadicScalar::zero(ctx); len];
        e[j] = PadicScalar::one(ctx);
        let lr = lower.apply_coeffs(ctx, &raise.apply_coeffs(ctx, &e).value).value;
        let rl = raise.apply_coeffs(ctx, &lower.apply_coeffs(ctx, &e).value).value;
        for i in 0..len - 1 {
            let mut entry = lr[i].sub(&rl[i]);
            if i == j {
                entry = entry.sub(&PadicScalar::one(ctx));
            }
            defect = defect.max(entry.norm());
        }
    }
    defect
}

/// `Omega, R Omega, R^2 Omega, ...` up to `count` vectors.
pub fn ladder<B: Clone>(
    raise: &impl CoefficientOperator,
    vacuum: &CoeffVector<B>,
    count: usize,
) -> Vec<CoeffVector<B>> {
    let mut out = vec![vacuum.clone()];
    while out.len() < count {
        let next = raise.apply(out.last().expect("ladder starts at the vacuum")).value;
        out.push(next);
    }
    out
}

/// Spot-checks `|sum c_i v_i| = max |c_i| |v_i|` on random coefficients.
pub fn ladder_is_orthogonal<B, R: Rng + ?Sized>(
    vectors: &[CoeffVector<B>],
    samples: usize,
    rng: &mut R,
) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let ctx = first.ctx;
    (0..samples).all(|_| {
        let mut sum = CoeffVector::<B>::zero(ctx, first.len());
        let mut expected = Norm::ZERO;
        for v in vectors {
            let c = PadicScalar::from_residue(rng.gen_range(0..ctx.modulus()), ctx);
            sum = sum.add(&v.scale(&c));
            expected = expected.max(c.norm().mul(v.norm()));
        }
        // terms below the precision window vanish on both sides
        let floor = Norm::from_valuation(ctx.m() as i64);
        let lhs = sum.norm();
        lhs == expected || (lhs <= floor && expected <= floor)
    })
}
