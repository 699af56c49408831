use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::decomposition::{teichmuller_spectral, SpectralDecomposition};
use super::idempotent::{frobenius_limit, log_p_ceil};
use crate::error::{HermiteFailure, PadicError, Result};
use crate::linalg::UMatrix;
use crate::norm::Norm;
use crate::scalar::{Scalar, ScalarRing};

/// `A = p^k sum_i x_i p^i` with commuting digits fixed by `sigma^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteDigitsMatrix<S: Scalar> {
    pub lead_valuation: i64,
    pub period: u32,
    pub digits: Vec<UMatrix<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HermiteCheck {
    pub digits_fixed: bool,
    pub digits_commute: bool,
    pub reassembly_defect: Norm,
    /// The reassembly agrees with the source mod `p^{k+m}`.
    pub reassembly_exact: bool,
}

impl HermiteCheck {
    pub fn is_exact(&self) -> bool {
        self.digits_fixed && self.digits_commute && self.reassembly_exact
    }
}

impl<S: Scalar> HermiteDigitsMatrix<S> {
    /// `p^k sum_i x_i p^i`.
    pub fn reassemble(&self) -> UMatrix<S> {
        let mut acc = self.digits[0].sub(&self.digits[0]);
        for (i, d) in self.digits.iter().enumerate().rev() {
            acc = acc.add(&d.shift(i as i64));
        }
        acc.shift(self.lead_valuation)
    }

    pub fn check(&self, a: &UMatrix<S>) -> HermiteCheck {
        let digits_fixed = self
            .digits
            .iter()
            .all(|d| d.frobenius_pow(self.period) == *d);
        let digits_commute = self.digits.iter().enumerate().all(|(i, x)| {
            self.digits[i + 1..]
                .iter()
                .all(|y| x.commutator(y).is_zero())
        });
        let reassembly_defect = self.reassemble().sub(a).norm();
        let window = self.lead_valuation + self.digits.len() as i64;
        HermiteCheck {
            digits_fixed,
            digits_commute,
            reassembly_defect,
            reassembly_exact: reassembly_defect <= Norm::from_valuation(window),
        }
    }
}

/// Largest working precision `<= 2m` representable for this prime.
fn working_precision(p: u64, m: u32) -> u32 {
    let mut w = 2 * m;
    while p.checked_pow(w).is_none() {
        w -= 1;
    }
    w
}

/// Teichmüller digit expansion of a matrix, or the digit at which it breaks down.
///
/// Each digit is the `sigma^N` limit of the current remainder; the remainder minus
/// its limit must vanish mod p before dividing by p. The peel runs at twice the
/// working precision so the digits commute exactly once reduced.
pub fn hermite_digits_matrix<S: Scalar>(
    a: &UMatrix<S>,
    period: u32,
) -> Result<HermiteDigitsMatrix<S>> {
    let ring = a.ring().clone();
    let ctx = ring.ctx();
    let m = ctx.m();
    let n = a.dim();
    let Some(k) = a.valuation() else {
        return Ok(HermiteDigitsMatrix {
            lead_valuation: 0,
            period,
            digits: vec![a.clone(); m as usize],
        });
    };
    let high = ring.with_precision(working_precision(ctx.p(), m))?;
    let budget = high.ctx().max_iters() + log_p_ceil(ctx.p(), n) + 1;
    let mut b = a.to_ring(&high).shift(-k);
    // p^-k A is only known to m - k digits when k > 0
    let known = (m as i64 - k.max(0)) as usize;
    let mut digits = Vec::with_capacity(m as usize);
    for stage in 0..known {
        let (s, _) = frobenius_limit(&b, period, budget).map_err(|defect| {
            PadicError::NotHermite {
                stage,
                defect,
                reason: HermiteFailure::NoFixedPoint,
            }
        })?;
        let rest = b.sub(&s);
        if rest.valuation().is_some_and(|v| v < 1) {
            return Err(PadicError::NotHermite {
                stage: stage + 1,
                defect: rest.norm(),
                reason: HermiteFailure::NilpotentResidue,
            });
        }
        digits.push(s.to_ring(&ring));
        b = rest.shift(-1);
    }
    digits.resize(m as usize, UMatrix::zero(ring.clone(), n));
    let expansion = HermiteDigitsMatrix {
        lead_valuation: k,
        period,
        digits,
    };
    let check = expansion.check(a);
    if !check.digits_commute {
        return Err(PadicError::NotHermite {
            stage: m as usize,
            defect: Norm::from_valuation(m as i64 - 1),
            reason: HermiteFailure::NonCommuting,
        });
    }
    Ok(expansion)
}

/// Nested digit projectors over the balls of `Z_p` (or `O_K` for larger periods).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure<S: Scalar> {
    pub depth: usize,
    pub lead_valuation: i64,
    pub period: u32,
    /// `levels[j]` maps addresses `(i_0, ..., i_j)` to `pi_{0,i_0} ... pi_{j,i_j}`;
    /// zero nodes are absent.
    pub levels: Vec<BTreeMap<Vec<u64>, UMatrix<S>>>,
    /// Teichmüller representative of each digit index that occurs.
    pub representatives: BTreeMap<u64, S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasureCheck {
    pub levels_complete: bool,
    pub refinement: bool,
    pub orthogonal: bool,
    pub unit_norm: bool,
}

impl MeasureCheck {
    pub fn is_valid(&self) -> bool {
        self.levels_complete && self.refinement && self.orthogonal && self.unit_norm
    }
}

impl<S: Scalar> SpectralMeasure<S> {
    /// Ball center `p^k sum_j omega_{i_j} p^j` of an address.
    pub fn center(&self, address: &[u64]) -> S {
        let any = self
            .representatives
            .values()
            .next()
            .expect("a measure has at least one node");
        let mut acc = any.ring().zero();
        for (j, i) in address.iter().enumerate() {
            acc = acc.add(&self.representatives[i].shift(j as i64));
        }
        acc.shift(self.lead_valuation)
    }

    pub fn leaves(&self) -> &BTreeMap<Vec<u64>, UMatrix<S>> {
        self.levels.last().expect("depth is at least 1")
    }

    pub fn node_counts(&self) -> Vec<usize> {
        self.levels.iter().map(BTreeMap::len).collect()
    }

    pub fn check(&self) -> MeasureCheck {
        let mut levels_complete = true;
        let mut refinement = true;
        let mut orthogonal = true;
        let mut unit_norm = true;
        for (j, level) in self.levels.iter().enumerate() {
            let mut nodes = level.values();
            let first = nodes.next().expect("levels are never empty");
            let total = nodes.fold(first.clone(), |acc, x| acc.add(x));
            levels_complete &= total.is_identity();
            let projectors: Vec<&UMatrix<S>> = level.values().collect();
            for (i, a) in projectors.iter().enumerate() {
                unit_norm &= a.norm() == Norm::ONE && a.mul(a) == **a;
                for b in &projectors[i + 1..] {
                    orthogonal &= a.mul(b).is_zero();
                }
            }
            if j + 1 < self.levels.len() {
                for (addr, parent) in level {
                    let children = self.levels[j + 1]
                        .iter()
                        .filter(|(child, _)| child.starts_with(addr))
                        .fold(parent.sub(parent), |acc, (_, x)| acc.add(x));
                    refinement &= children == *parent;
                }
            }
        }
        MeasureCheck {
            levels_complete,
            refinement,
            orthogonal,
            unit_norm,
        }
    }
}

/// Spectral measure of a Hermite matrix of period 1 to the given depth.
pub fn spectral_measure<S: Scalar>(a: &UMatrix<S>, depth: usize) -> Result<SpectralMeasure<S>> {
    spectral_measure_with_period(a, 1, depth)
}

pub fn spectral_measure_with_period<S: Scalar>(
    a: &UMatrix<S>,
    period: u32,
    depth: usize,
) -> Result<SpectralMeasure<S>> {
    let m = a.ring().ctx().m() as usize;
    if depth == 0 || depth > m {
        return Err(PadicError::InvalidMeasure(format!(
            "depth {depth} is outside 1..={m}"
        )));
    }
    let expansion = hermite_digits_matrix(a, period)?;
    measure_from_digits(&expansion, depth)
}

/// Builds the measure from an existing digit expansion.
pub fn measure_from_digits<S: Scalar>(
    expansion: &HermiteDigitsMatrix<S>,
    depth: usize,
) -> Result<SpectralMeasure<S>> {
    if depth == 0 || depth > expansion.digits.len() {
        return Err(PadicError::InvalidMeasure(format!(
            "depth {depth} is outside 1..={}",
            expansion.digits.len()
        )));
    }
    let decompositions: Vec<SpectralDecomposition<S>> = expansion.digits[..depth]
        .par_iter()
        .map(|d| teichmuller_spectral(d, expansion.period))
        .collect::<Result<_>>()?;
    let mut representatives = BTreeMap::new();
    for dec in &decompositions {
        for pt in &dec.points {
            representatives.insert(pt.index, pt.eigenvalue.clone());
        }
    }
    let mut levels: Vec<BTreeMap<Vec<u64>, UMatrix<S>>> = Vec::with_capacity(depth);
    levels.push(
        decompositions[0]
            .points
            .iter()
            .map(|pt| (vec![pt.index], pt.projector.clone()))
            .collect(),
    );
    for dec in &decompositions[1..] {
        let parents: Vec<(&Vec<u64>, &UMatrix<S>)> =
            levels.last().expect("level 0 exists").iter().collect();
        let children: Vec<(Vec<u64>, UMatrix<S>)> = parents
            .par_iter()
            .flat_map_iter(|(addr, parent)| {
                dec.points.iter().filter_map(move |pt| {
                    let node = parent.mul(&pt.projector);
                    if node.is_zero() {
                        return None;
                    }
                    let mut child = (*addr).clone();
                    child.push(pt.index);
                    Some((child, node))
                })
            })
            .collect();
        levels.push(children.into_iter().collect());
    }
    Ok(SpectralMeasure {
        depth,
        lead_valuation: expansion.lead_valuation,
        period: expansion.period,
        levels,
        representatives,
    })
}

/// `(sum pi, sum center * pi)` over the deepest level.
pub fn spectral_integral<S: Scalar>(measure: &SpectralMeasure<S>) -> (UMatrix<S>, UMatrix<S>) {
    let leaves = measure.leaves();
    let some = leaves.values().next().expect("levels are never empty");
    let zero = some.sub(some);
    leaves
        .iter()
        .fold((zero.clone(), zero), |(id, rec), (addr, pi)| {
            (id.add(pi), rec.add(&pi.scale(&measure.center(addr))))
        })
}
