use std::fmt;

use crate::error::{PadicError, Result};
use crate::norm::Norm;
use crate::padic::PadicScalar;
use crate::residue::FqElement;
use crate::scalar::{vector_norm, Scalar, ScalarRing};
use crate::witt::{ExtRing, ExtScalar};

/// Dense `n x n` matrix over a p-adic scalar ring, with the sup norm.
#[derive(Clone, PartialEq)]
pub struct UMatrix<S: Scalar> {
    ring: S::Ring,
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> UMatrix<S> {
    /// Row-major construction.
    pub fn new(ring: S::Ring, n: usize, entries: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(PadicError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if entries.len() != n * n {
            return Err(PadicError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(PadicError::ContextMismatch);
        }
        Ok(UMatrix { ring, n, entries })
    }

    pub fn from_rows(ring: S::Ring, rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(PadicError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ring: S::Ring, n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        UMatrix { ring, n, entries }
    }

    pub fn zero(ring: S::Ring, n: usize) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, n, |_, _| z.clone())
    }

    pub fn identity(ring: S::Ring, n: usize) -> Self {
        Self::scalar(ring.clone(), n, &ring.one())
    }

    /// `c * I`.
    pub fn scalar(ring: S::Ring, n: usize, c: &S) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, n, |i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn diagonal(ring: S::Ring, diag: &[S]) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                z.clone()
            }
        })
    }

    pub fn ring(&self) -> &S::Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.entries[i * self.n + j] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        assert!(self.ring == other.ring, "matrices over different rings");
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        self.check_same(other);
        UMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        UMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| c.mul(a))
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|a| a.shift(k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.ring.zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.push(acc);
            }
        }
        UMatrix {
            ring: self.ring.clone(),
            n,
            entries: out,
        }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.ring.clone(), self.n);
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

    /// One application of the Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ring.ctx().p())
    }

    /// `sigma^k(x) = x^(p^k)`.
    pub fn frobenius_pow(&self, k: u32) -> Self {
        let mut y = self.clone();
        for _ in 0..k {
            if y.is_zero() {
                break;
            }
            y = y.frobenius();
        }
        y
    }

    /// Entrywise change of precision.
    pub fn to_ring(&self, ring: &S::Ring) -> Self {
        UMatrix {
            ring: ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(|e| e.to_ring(ring)).collect(),
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n, "vector length differs from matrix dimension");
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.ring.zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j])))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring.clone(), self.n)
    }

    /// `max |a_ij|`.
    pub fn norm(&self) -> Norm {
        vector_norm(&self.entries)
    }

    /// Minimal entry valuation, `None` for the zero matrix.
    pub fn valuation(&self) -> Option<i64> {
        self.norm().valuation()
    }

    pub fn in_unit_ball(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn reduce(&self) -> Result<Vec<FqElement>> {
        self.entries.iter().map(|e| e.reduce()).collect()
    }

    /// Determinant by Gaussian elimination, pivoting on an entry of minimal valuation.
    pub fn determinant(&self) -> S {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = self.ring.one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .min_by_key(|&r| a[r * n + col].valuation().unwrap());
            let Some(pr) = pivot else {
                return self.ring.zero();
            };
            if pr != col {
                for j in 0..n {
                    a.swap(pr * n + j, col * n + j);
                }
                det = det.neg();
            }
            let piv = a[col * n + col].clone();
            det = det.mul(&piv);
            let inv = piv.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = a[r * n + col].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&t);
                }
            }
        }
        det
    }

    /// True iff every entry is integral and the determinant is a unit.
    pub fn is_gl(&self) -> bool {
        self.in_unit_ball() && self.determinant().valuation() == Some(0)
    }

    /// Inverse of a matrix in `GL_n(O)`; other matrices are refused.
    pub fn inverse(&self) -> Result<Self> {
        if !self.in_unit_ball() {
            return Err(PadicError::NotInvertible);
        }
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(self.ring.clone(), n).entries;
        for col in 0..n {
            let pr = (col..n)
                .find(|&r| a[r * n + col].valuation() == Some(0))
                .ok_or(PadicError::NotInvertible)?;
            if pr != col {
                for j in 0..n {
                    a.swap(pr * n + j, col * n + j);
                    inv.swap(pr * n + j, col * n + j);
                }
            }
            let pinv = a[col * n + col].inverse()?;
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&pinv);
                inv[col * n + j] = inv[col * n + j].mul(&pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&t);
                    let t = factor.mul(&inv[col * n + j]);
                    inv[r * n + j] = inv[r * n + j].sub(&t);
                }
            }
        }
        Ok(UMatrix {
            ring: self.ring.clone(),
            n,
            entries: inv,
        })
    }
}

impl UMatrix<PadicScalar> {
    /// The same matrix viewed over an unramified extension.
    pub fn embed(&self, ring: &ExtRing) -> Result<UMatrix<ExtScalar>> {
        if !ring.ctx().same_ring(self.ring()) {
            return Err(PadicError::ContextMismatch);
        }
        Ok(UMatrix::from_fn(ring.clone(), self.n, |i, j| ring.embed(self.get(i, j))))
    }

    /// Integer matrix, row-major.
    pub fn from_integers(ctx: crate::padic::PrecisionContext, rows: &[&[i128]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| PadicScalar::from_integer(x, ctx)).collect())
            .collect();
        Self::from_rows(ctx, rows)
    }
}

impl UMatrix<ExtScalar> {
    /// Descends to the base ring when every entry has vanishing higher coordinates.
    pub fn to_base(&self) -> Option<UMatrix<PadicScalar>> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_base())
            .collect::<Option<Vec<_>>>()?;
        Some(UMatrix {
            ring: self.ring.ctx(),
            n: self.n,
            entries,
        })
    }
}

impl<S: Scalar> fmt::Debug for UMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}
