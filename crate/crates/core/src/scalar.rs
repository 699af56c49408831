//! The ring interface shared by `Z_p` scalars and unramified-extension scalars,
//! so matrices and spectral routines are written once.

use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng;

use crate::error::{PadicError, Result};
use crate::norm::Norm;
use crate::padic::{teichmuller_lift, PadicScalar, PrecisionContext};
use crate::residue::{FqElement, FqField};

pub trait ScalarRing: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Scalar<Ring = Self>;

    fn ctx(&self) -> PrecisionContext;

    /// Degree of the residue field over `F_p`.
    fn residue_degree(&self) -> u32;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, n: i128) -> Self::Elem;

    fn embed(&self, x: &PadicScalar) -> Self::Elem;

    fn residue_field(&self) -> Arc<FqField>;

    /// Fixed points of `sigma^period`, ordered by the index of their reduction.
    fn teichmuller_points(&self, period: u32) -> Result<Vec<Self::Elem>>;

    /// Uniform element of `O/p^m`.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// The same ring at absolute precision `m`.
    fn with_precision(&self, m: u32) -> Result<Self>;
}

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    type Ring: ScalarRing<Elem = Self>;

    fn ring(&self) -> Self::Ring;

    fn add(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self;

    fn mul(&self, other: &Self) -> Self;

    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;

    /// Minimal coordinate valuation, `None` for zero.
    fn valuation(&self) -> Option<i64>;

    fn inverse(&self) -> Result<Self>;

    /// Multiplication by `p^k`.
    fn shift(&self, k: i64) -> Self;

    /// Reduction modulo p; the element must lie in the unit ball.
    fn reduce(&self) -> Result<FqElement>;

    /// Image in `ring`, which differs from `self.ring()` only in precision.
    /// Raising precision pads with zero digits.
    fn to_ring(&self, ring: &Self::Ring) -> Self;

    fn norm(&self) -> Norm {
        match self.valuation() {
            None => Norm::ZERO,
            Some(v) => Norm::from_valuation(v),
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.ring().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub(crate) fn check_teichmuller_enumeration(p: u64, degree: u32) -> Result<()> {
    match p.checked_pow(degree) {
        Some(q) if q <= crate::residue::ENUMERATION_BOUND => Ok(()),
        _ => Err(PadicError::EnumerationBound { p, degree }),
    }
}

impl ScalarRing for PrecisionContext {
    type Elem = PadicScalar;

    fn ctx(&self) -> PrecisionContext {
        *self
    }

    fn residue_degree(&self) -> u32 {
        1
    }

    fn zero(&self) -> PadicScalar {
        PadicScalar::zero(*self)
    }

    fn one(&self) -> PadicScalar {
        PadicScalar::one(*self)
    }

    fn from_integer(&self, n: i128) -> PadicScalar {
        PadicScalar::from_integer(n, *self)
    }

    fn embed(&self, x: &PadicScalar) -> PadicScalar {
        *x
    }

    fn residue_field(&self) -> Arc<FqField> {
        FqField::new(self.p(), 1).expect("context prime is prime")
    }

    fn teichmuller_points(&self, period: u32) -> Result<Vec<PadicScalar>> {
        if period != 1 {
            return Err(PadicError::PeriodUnavailable { period, degree: 1 });
        }
        check_teichmuller_enumeration(self.p(), 1)?;
        (0..self.p()).map(|r| teichmuller_lift(r, *self)).collect()
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> PadicScalar {
        PadicScalar::from_residue(rng.gen_range(0..self.modulus()), *self)
    }

    fn with_precision(&self, m: u32) -> Result<Self> {
        PrecisionContext::with_precision(self, m)
    }
}

impl Scalar for PadicScalar {
    type Ring = PrecisionContext;

    fn ring(&self) -> PrecisionContext {
        self.ctx()
    }

    fn add(&self, other: &Self) -> Self {
        PadicScalar::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        PadicScalar::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        PadicScalar::mul(self, other)
    }

    fn neg(&self) -> Self {
        PadicScalar::neg(self)
    }

    fn is_zero(&self) -> bool {
        PadicScalar::is_zero(self)
    }

    fn valuation(&self) -> Option<i64> {
        PadicScalar::valuation(self)
    }

    fn inverse(&self) -> Result<Self> {
        PadicScalar::inverse(self)
    }

    fn shift(&self, k: i64) -> Self {
        PadicScalar::shift(self, k)
    }

    fn reduce(&self) -> Result<FqElement> {
        let r = self.residue_mod_p()?;
        Ok(self.ring().residue_field().from_u64(r))
    }

    fn to_ring(&self, ring: &PrecisionContext) -> Self {
        self.with_context(*ring)
    }

    fn pow(&self, e: u64) -> Self {
        PadicScalar::pow(self, e)
    }
}

/// Sup norm of a vector.
pub fn vector_norm<S: Scalar>(v: &[S]) -> Norm {
    v.iter().map(Scalar::norm).max().unwrap_or(Norm::ZERO)
}
