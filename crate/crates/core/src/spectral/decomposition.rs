use serde::Serialize;

use crate::error::{PadicError, Result};
use crate::linalg::UMatrix;
use crate::norm::Norm;
use crate::padic::PadicScalar;
use crate::residue::ENUMERATION_BOUND;
use crate::scalar::{Scalar, ScalarRing};
use crate::witt::{ExtRing, ExtScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint<S: Scalar> {
    /// Index of the reduction of the eigenvalue in the residue field.
    pub index: u64,
    pub eigenvalue: S,
    pub projector: UMatrix<S>,
}

/// `x = sum lambda pi_lambda` over the Teichmüller points of a period.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<S: Scalar> {
    pub period: u32,
    /// Nonzero projectors, ordered by index.
    pub points: Vec<SpectralPoint<S>>,
    /// `|sum pi_lambda - 1|`, zero for a sound decomposition.
    pub residual_identity_defect: Norm,
}

/// Defects of the four decomposition identities; all zero when sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub identity_defect: Norm,
    pub reconstruction_defect: Norm,
    pub idempotency_defect: Norm,
    pub orthogonality_defect: Norm,
    /// Every listed projector has norm 1.
    pub unit_norm: bool,
}

impl DecompositionCheck {
    pub fn is_exact(&self) -> bool {
        self.identity_defect.is_zero()
            && self.reconstruction_defect.is_zero()
            && self.idempotency_defect.is_zero()
            && self.orthogonality_defect.is_zero()
            && self.unit_norm
    }
}

impl<S: Scalar> SpectralDecomposition<S> {
    pub fn eigenvalues(&self) -> Vec<S> {
        self.points.iter().map(|pt| pt.eigenvalue.clone()).collect()
    }

    pub fn projector_sum(&self, ring: &S::Ring, n: usize) -> UMatrix<S> {
        self.points
            .iter()
            .fold(UMatrix::zero(ring.clone(), n), |acc, pt| acc.add(&pt.projector))
    }

    /// `sum lambda pi_lambda`.
    pub fn reconstruct(&self, ring: &S::Ring, n: usize) -> UMatrix<S> {
        self.points.iter().fold(UMatrix::zero(ring.clone(), n), |acc, pt| {
            acc.add(&pt.projector.scale(&pt.eigenvalue))
        })
    }

    pub fn check(&self, x: &UMatrix<S>) -> DecompositionCheck {
        let ring = x.ring();
        let n = x.dim();
        let identity = UMatrix::identity(ring.clone(), n);
        let mut idempotency_defect = Norm::ZERO;
        let mut orthogonality_defect = Norm::ZERO;
        for (i, a) in self.points.iter().enumerate() {
            let sq = a.projector.mul(&a.projector).sub(&a.projector).norm();
            idempotency_defect = idempotency_defect.max(sq);
            for b in &self.points[i + 1..] {
                let ab = a.projector.mul(&b.projector).norm();
                let ba = b.projector.mul(&a.projector).norm();
                orthogonality_defect = orthogonality_defect.max(ab).max(ba);
            }
        }
        DecompositionCheck {
            identity_defect: self.projector_sum(ring, n).sub(&identity).norm(),
            reconstruction_defect: self.reconstruct(ring, n).sub(x).norm(),
            idempotency_defect,
            orthogonality_defect,
            unit_norm: self.points.iter().all(|pt| pt.projector.norm() == Norm::ONE),
        }
    }
}

/// `|sigma^N(x) - x|`.
pub fn teichmuller_defect<S: Scalar>(x: &UMatrix<S>, period: u32) -> Norm {
    x.frobenius_pow(period).sub(x).norm()
}

/// Lagrange projectors `prod_{mu != lambda} (x - mu) / (lambda - mu)` over `points`,
/// zero projectors omitted. Each denominator is checked to be a unit.
pub(crate) fn lagrange_projectors<S: Scalar>(
    x: &UMatrix<S>,
    points: &[S],
) -> Result<Vec<(usize, UMatrix<S>)>> {
    let ring = x.ring().clone();
    let n = x.dim();
    let q = points.len();
    let factors: Vec<UMatrix<S>> = points
        .iter()
        .map(|mu| x.sub(&UMatrix::scalar(ring.clone(), n, mu)))
        .collect();
    let mut prefix = Vec::with_capacity(q + 1);
    prefix.push(UMatrix::identity(ring.clone(), n));
    for f in &factors {
        let next = prefix.last().expect("prefix starts non-empty").mul(f);
        prefix.push(next);
    }
    let mut suffix = vec![UMatrix::identity(ring.clone(), n); q + 1];
    for k in (0..q).rev() {
        suffix[k] = factors[k].mul(&suffix[k + 1]);
    }
    let mut out = Vec::new();
    for k in 0..q {
        let mut denom = ring.one();
        for (j, mu) in points.iter().enumerate() {
            if j != k {
                denom = denom.mul(&points[k].sub(mu));
            }
        }
        if denom.valuation() != Some(0) {
            return Err(PadicError::NonUnitDenominator);
        }
        let numerator = prefix[k].mul(&suffix[k + 1]);
        if numerator.is_zero() {
            continue;
        }
        out.push((k, numerator.scale(&denom.inverse()?)));
    }
    Ok(out)
}

/// Spectral decomposition of a Teichmüller matrix of the given period.
pub fn teichmuller_spectral<S: Scalar>(
    x: &UMatrix<S>,
    period: u32,
) -> Result<SpectralDecomposition<S>> {
    if let Some(v) = x.valuation() {
        if v < 0 {
            return Err(PadicError::OutsideUnitBall { valuation: v });
        }
    }
    let defect = teichmuller_defect(x, period);
    if !defect.is_zero() {
        return Err(PadicError::NotTeichmuller { period, defect });
    }
    let points = x.ring().teichmuller_points(period)?;
    let projectors = lagrange_projectors(x, &points)?;
    let mut points: Vec<SpectralPoint<S>> = projectors
        .into_iter()
        .map(|(k, projector)| {
            let eigenvalue = points[k].clone();
            let index = eigenvalue.reduce().map(|r| r.index())?;
            Ok(SpectralPoint {
                index,
                eigenvalue,
                projector,
            })
        })
        .collect::<Result<_>>()?;
    points.sort_by_key(|pt| pt.index);
    let mut decomposition = SpectralDecomposition {
        period,
        points,
        residual_identity_defect: Norm::ZERO,
    };
    let identity = UMatrix::identity(x.ring().clone(), x.dim());
    decomposition.residual_identity_defect = decomposition
        .projector_sum(x.ring(), x.dim())
        .sub(&identity)
        .norm();
    Ok(decomposition)
}

/// Period-infinity mode: walks the chain `N = 1!, 2!, 3!, ...` up to `n_max` and
/// decomposes `x` over `T_N(K)` for the first `N` with `sigma^N(x) = x`.
pub fn factorial_chain_spectral(
    x: &UMatrix<PadicScalar>,
    n_max: u32,
) -> Result<SpectralDecomposition<ExtScalar>> {
    let ctx = x.ring().ctx();
    let mut n = 1u32;
    let mut k = 1u32;
    let mut tried = 0u32;
    while n <= n_max {
        match ctx.p().checked_pow(n) {
            Some(q) if q <= ENUMERATION_BOUND => {}
            _ => break,
        }
        tried += n;
        if teichmuller_defect(x, n).is_zero() {
            let ring = ExtRing::with_context(ctx, n)?;
            return teichmuller_spectral(&x.embed(&ring)?, n);
        }
        k += 1;
        n = match n.checked_mul(k) {
            Some(next) => next,
            None => break,
        };
    }
    Err(PadicError::PeriodExceeded {
        n_max,
        iterations: tried,
    })
}
