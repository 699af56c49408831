use serde::Serialize;

use super::hermite::spectral_measure_with_period;
use crate::error::{PadicError, Result};
use crate::linalg::UMatrix;
use crate::norm::Norm;
use crate::scalar::{vector_norm, Scalar, ScalarRing};

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport<S: Scalar> {
    /// `max |lambda - mu|` over the spectrum.
    pub diameter: Norm,
    pub operator_norm: Norm,
    /// `max |lambda|` over the spectrum.
    pub spectral_radius: Norm,
    /// Ball centers of the full-depth spectral measure.
    pub spectrum: Vec<S>,
    /// `|A| = max |lambda|`.
    pub norm_law: bool,
    /// `|A - mu| = diam(A)` for every `mu` in the spectrum.
    pub translation_law: bool,
}

/// Spectrum diameter of a Hermite matrix of the given period.
pub fn spectrum_diameter<S: Scalar>(a: &UMatrix<S>, period: u32) -> Result<DiameterReport<S>> {
    let depth = a.ring().ctx().m() as usize;
    let measure = spectral_measure_with_period(a, period, depth)?;
    let spectrum: Vec<S> = measure.leaves().keys().map(|addr| measure.center(addr)).collect();
    let mut diameter = Norm::ZERO;
    for (i, x) in spectrum.iter().enumerate() {
        for y in &spectrum[i + 1..] {
            diameter = diameter.max(x.sub(y).norm());
        }
    }
    let spectral_radius = spectrum.iter().map(Scalar::norm).max().unwrap_or(Norm::ZERO);
    let operator_norm = a.norm();
    let ring = a.ring().clone();
    let translation_law = spectrum.iter().all(|mu| {
        a.sub(&UMatrix::scalar(ring.clone(), a.dim(), mu)).norm() == diameter
    });
    Ok(DiameterReport {
        diameter,
        operator_norm,
        spectral_radius,
        spectrum,
        norm_law: operator_norm == spectral_radius,
        translation_law,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UncertaintyReport {
    /// `|[A, B] psi|`.
    pub lhs: Norm,
    /// `diam(A) diam(B)`.
    pub rhs: Norm,
    pub holds: bool,
    pub diam_a: Norm,
    pub diam_b: Norm,
}

/// Checks `|[A, B] psi| <= diam(A) diam(B)` for a unit vector `psi`.
pub fn uncertainty_check<S: Scalar>(
    a: &UMatrix<S>,
    b: &UMatrix<S>,
    psi: &[S],
    period: u32,
) -> Result<UncertaintyReport> {
    if a.dim() != b.dim() || psi.len() != a.dim() {
        return Err(PadicError::DimensionMismatch {
            expected: a.dim(),
            found: if a.dim() != b.dim() { b.dim() } else { psi.len() },
        });
    }
    let psi_norm = vector_norm(psi);
    if psi_norm != Norm::ONE {
        return Err(PadicError::NotNormalized(psi_norm));
    }
    let diam_a = spectrum_diameter(a, period)?.diameter;
    let diam_b = spectrum_diameter(b, period)?.diameter;
    let lhs = vector_norm(&a.commutator(b).apply(psi));
    let rhs = diam_a.mul(diam_b);
    Ok(UncertaintyReport {
        lhs,
        rhs,
        holds: lhs <= rhs,
        diam_a,
        diam_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{PadicScalar, PrecisionContext};

    fn int(ctx: PrecisionContext, rows: &[&[i128]]) -> UMatrix<PadicScalar> {
        UMatrix::from_integers(ctx, rows).unwrap()
    }

    #[test]
    fn diameters() {
        let c = PrecisionContext::new(3, 4).unwrap();
        let seven = PadicScalar::from_integer(7, c);
        let scalar = UMatrix::scalar(c, 2, &seven);
        assert_eq!(spectrum_diameter(&scalar, 1).unwrap().diameter, Norm::ZERO);
        let r = spectrum_diameter(&int(c, &[&[1, 0], &[0, 4]]), 1).unwrap();
        assert_eq!(r.diameter, Norm::from_valuation(1));
        assert!(r.norm_law && r.translation_law);
        let r = spectrum_diameter(&int(c, &[&[1, 0], &[0, -1]]), 1).unwrap();
        assert_eq!(r.diameter, Norm::ONE);
        assert_eq!(r.spectrum.len(), 2);
    }

    #[test]
    fn uncertainty_examples() {
        let c = PrecisionContext::new(3, 4).unwrap();
        let a = int(c, &[&[1, 0], &[0, -1]]);
        let b = int(c, &[&[0, 1], &[1, 0]]);
        let psi = [PadicScalar::one(c), PadicScalar::zero(c)];
        let r = uncertainty_check(&a, &b, &psi, 1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Norm::ONE, Norm::ONE, true));
        let lam = UMatrix::scalar(c, 2, &PadicScalar::from_integer(5, c));
        let r = uncertainty_check(&lam, &b, &psi, 1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (Norm::ZERO, Norm::ZERO, true));
        let short = [PadicScalar::from_integer(3, c), PadicScalar::zero(c)];
        assert_eq!(
            uncertainty_check(&a, &b, &short, 1),
            Err(PadicError::NotNormalized(Norm::from_valuation(1)))
        );
    }
}
