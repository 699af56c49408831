//! Finite fields `F_{p^N}` as `F_p[X]/(f)` for the lexicographically smallest
//! monic irreducible `f`, with the Frobenius `a -> a^p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{PadicError, Result};
use crate::padic::{inv_mod, is_prime, mul_mod, MAX_PRIME};

/// Upper bound on `p^N` for operations that enumerate a field.
pub const ENUMERATION_BOUND: u64 = 1 << 20;

/// Polynomials over `F_p`, coefficients constant-first, no trailing zeros.
pub(crate) mod poly {
    use super::*;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    /// Quotient and remainder of `a` by a nonzero `b`.
    pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p).expect("field coefficient");
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul_mod(c, bj, p)) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divmod(a, b, p).1
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    /// `a^(p^k) mod f` by `k` rounds of square-and-multiply.
    pub fn frobenius_pow(a: &[u64], k: u32, f: &[u64], p: u64) -> Vec<u64> {
        let mut y = rem(a, f, p);
        for _ in 0..k {
            y = powmod(&y, p as u128, f, p);
        }
        y
    }

    pub fn powmod(a: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], f, p);
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of `a` modulo `f`, when `gcd(a, f) = 1`.
    pub fn inverse_mod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(f.to_vec()), rem(a, f, p));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p)?;
        Some(rem(&mul(&s0, &[c], p), f, p))
    }
}

fn proper_divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

/// Irreducibility certificate: `X^(p^N) = X (mod f)` and `gcd(X^(p^d) - X, f) = 1`
/// for every proper divisor `d` of `N = deg f`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = poly::trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let n = (f.len() - 1) as u32;
    let x = [0u64, 1];
    if poly::sub(&poly::frobenius_pow(&x, n, &f, p), &poly::rem(&x, &f, p), p) != Vec::<u64>::new() {
        return false;
    }
    proper_divisors(n).all(|d| {
        let g = poly::sub(&poly::frobenius_pow(&x, d, &f, p), &x, p);
        poly::gcd(&g, &f, p).len() == 1
    })
}

/// The lexicographically smallest monic irreducible polynomial of degree `n` over `F_p`,
/// comparing coefficient vectors constant-first. Returned constant-first, monic.
pub fn build_modulus(p: u64, n: u32) -> Result<Vec<u64>> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    if n == 0 {
        return Err(PadicError::InvalidPrecision("extension degree must be at least 1".into()));
    }
    let mut coeffs = vec![0u64; n as usize];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
        // odometer with c_0 most significant
        let mut i = n as usize;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials of every degree exist");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// `F_{p^N}` with a fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    degree: u32,
    modulus: Vec<u64>,
}

impl FqField {
    pub fn new(p: u64, degree: u32) -> Result<Arc<Self>> {
        let modulus = build_modulus(p, degree)?;
        Ok(Arc::new(FqField { p, degree, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic modulus, constant-first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^N`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.degree)
    }

    pub(crate) fn check_enumerable(&self) -> Result<u64> {
        match self.order() {
            Some(q) if q <= ENUMERATION_BOUND => Ok(q),
            _ => Err(PadicError::EnumerationBound {
                p: self.p,
                degree: self.degree,
            }),
        }
    }

    pub fn zero(self: &Arc<Self>) -> FqElement {
        FqElement {
            field: Arc::clone(self),
            coords: vec![0; self.degree as usize],
        }
    }

    pub fn one(self: &Arc<Self>) -> FqElement {
        self.from_u64(1)
    }

    pub fn from_u64(self: &Arc<Self>, c: u64) -> FqElement {
        let mut e = self.zero();
        e.coords[0] = c % self.p;
        e
    }

    /// Element from power-basis coordinates (reduced mod p, padded to N).
    pub fn element(self: &Arc<Self>, coords: &[u64]) -> Result<FqElement> {
        if coords.len() > self.degree as usize {
            return Err(PadicError::DimensionMismatch {
                expected: self.degree as usize,
                found: coords.len(),
            });
        }
        let mut e = self.zero();
        for (slot, &c) in e.coords.iter_mut().zip(coords) {
            *slot = c % self.p;
        }
        Ok(e)
    }

    /// The element whose coordinates are the base-p digits of `index` (`c_0` least significant).
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> FqElement {
        let mut e = self.zero();
        for c in e.coords.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        e
    }

    /// Every element, in index order. Requires `p^N <= 2^20`.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<FqElement>> {
        let q = self.check_enumerable()?;
        Ok((0..q).map(|i| self.from_index(i)).collect())
    }

    /// The class of `X` (a generator of the power basis when N > 1).
    pub fn generator(self: &Arc<Self>) -> FqElement {
        let poly = poly::rem(&[0, 1], &self.modulus, self.p);
        self.element(&poly).expect("reduced polynomial fits")
    }
}

/// An element of `F_{p^N}` in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    field: Arc<FqField>,
    coords: Vec<u64>,
}

impl std::hash::Hash for FqField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.degree.hash(state);
    }
}

impl FqElement {
    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Inverse of `FqField::from_index`.
    pub fn index(&self) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.field.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_poly(&self, poly: Vec<u64>) -> FqElement {
        self.field.element(&poly).expect("reduced polynomial fits")
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.field.p;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FqElement {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coords = self.coords.iter().map(|a| (p - a) % p).collect();
        FqElement {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        self.from_poly(poly::mulmod(&self.coords, &other.coords, &f.modulus, f.p))
    }

    pub fn pow(&self, e: u128) -> Self {
        let f = &self.field;
        self.from_poly(poly::powmod(&self.coords, e, &f.modulus, f.p))
    }

    pub fn inverse(&self) -> Result<Self> {
        let f = &self.field;
        poly::inverse_mod(&self.coords, &f.modulus, f.p)
            .map(|inv| self.from_poly(inv))
            .ok_or(PadicError::DivisionByZero)
    }

    /// `a -> a^p`, the generator of `Gal(F_{p^N} | F_p)`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u128)
    }

    /// `a -> a^(p^k)`.
    pub fn frobenius_pow(&self, k: u32) -> Self {
        let f = &self.field;
        self.from_poly(poly::frobenius_pow(&self.coords, k, &f.modulus, f.p))
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}{:?}", self.field.p, self.field.degree, self.coords)
    }
}

/// `a -> a^p` on `F_{p^N}`.
pub fn fq_frobenius(a: &FqElement) -> FqElement {
    a.frobenius()
}
