use rand::Rng;
use serde::Serialize;

use super::matrix::UMatrix;
use crate::norm::Norm;
use crate::scalar::{vector_norm, Scalar, ScalarRing};

/// Outcome of checking the equivalent characterizations of an orthogonal projection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionCertificate {
    /// `|pi^2 - pi|`; zero for an idempotent at precision.
    pub idempotency_defect: Norm,
    pub norm_of_pi: Norm,
    /// `|pi| = 1`.
    pub unit_norm: bool,
    /// `|pi x| <= 1` for every sampled `|x| <= 1`.
    pub unit_ball_stable: bool,
    /// `|x| = max(|pi x|, |(1 - pi) x|)` for every sample.
    pub max_decomposition: bool,
    pub samples_checked: usize,
    /// `pi` is integral and its reduction mod p is idempotent.
    pub reduction_idempotent: bool,
}

impl ProjectionCertificate {
    pub fn is_valid(&self) -> bool {
        self.idempotency_defect.is_zero()
            && self.unit_norm
            && self.unit_ball_stable
            && self.max_decomposition
            && self.reduction_idempotent
    }

    /// The four characterizations deliver the same verdict.
    pub fn conditions_agree(&self) -> bool {
        let v = self.unit_norm;
        self.unit_ball_stable == v && self.max_decomposition == v && self.reduction_idempotent == v
    }

    /// Name of the first condition that failed, if any.
    pub fn failing_condition(&self) -> Option<&'static str> {
        if !self.idempotency_defect.is_zero() {
            Some("idempotency")
        } else if !self.unit_norm {
            Some("unit norm")
        } else if !self.unit_ball_stable {
            Some("unit ball stability")
        } else if !self.max_decomposition {
            Some("max decomposition")
        } else if !self.reduction_idempotent {
            Some("reduction idempotent")
        } else {
            None
        }
    }
}

/// Random vector whose coordinates have valuations spread over `0..m` (and zero).
pub fn sample_vector<S: Scalar, R: Rng + ?Sized>(ring: &S::Ring, n: usize, rng: &mut R) -> Vec<S> {
    let m = ring.ctx().m() as i64;
    (0..n)
        .map(|_| {
            let v = rng.gen_range(0..=m);
            let unit = loop {
                let u = ring.random_element(rng);
                if u.valuation() == Some(0) {
                    break u;
                }
            };
            unit.shift(v)
        })
        .collect()
}

/// Basis vectors followed by `samples` random vectors.
fn probe_vectors<S: Scalar, R: Rng + ?Sized>(
    ring: &S::Ring,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    out.extend((0..samples).map(|_| sample_vector::<S, R>(ring, n, rng)));
    out
}

/// Evaluates the norm, unit-ball, max-decomposition and reduction conditions on `pi`.
pub fn certify_orthogonal_projection<S: Scalar, R: Rng + ?Sized>(
    pi: &UMatrix<S>,
    samples: usize,
    rng: &mut R,
) -> ProjectionCertificate {
    let ring = pi.ring().clone();
    let n = pi.dim();
    let idempotency_defect = pi.mul(pi).sub(pi).norm();
    let norm_of_pi = pi.norm();
    let complement = UMatrix::identity(ring.clone(), n).sub(pi);
    let probes = probe_vectors::<S, R>(&ring, n, samples, rng);

    let mut unit_ball_stable = true;
    let mut max_decomposition = true;
    for x in &probes {
        let px = vector_norm(&pi.apply(x));
        let qx = vector_norm(&complement.apply(x));
        let nx = vector_norm(x);
        if nx <= Norm::ONE && px > Norm::ONE {
            unit_ball_stable = false;
        }
        if nx != px.max(qx) {
            max_decomposition = false;
        }
    }

    let reduction_idempotent = pi.in_unit_ball() && {
        let sq = pi.mul(pi);
        let (a, b) = (pi.reduce(), sq.reduce());
        matches!((a, b), (Ok(a), Ok(b)) if a == b)
    };

    ProjectionCertificate {
        idempotency_defect,
        norm_of_pi,
        unit_norm: norm_of_pi == Norm::ONE,
        unit_ball_stable,
        max_decomposition,
        samples_checked: probes.len(),
        reduction_idempotent,
    }
}

/// Membership in `GL_n(O)`: integral entries and unit determinant.
pub fn is_gl_zp<S: Scalar>(u: &UMatrix<S>) -> bool {
    u.is_gl()
}

/// Columns are orthonormal: `|sum c_i X_i| = max |c_i|` for all coefficients.
///
/// Decided by `GL_n` membership; the norm identity is additionally spot-checked on
/// random coefficient vectors and a failure there also yields `false`.
pub fn is_orthonormal_columns<S: Scalar, R: Rng + ?Sized>(
    u: &UMatrix<S>,
    samples: usize,
    rng: &mut R,
) -> bool {
    if !u.is_gl() {
        return false;
    }
    let ring = u.ring().clone();
    (0..samples).all(|_| {
        let c = sample_vector::<S, R>(&ring, u.dim(), rng);
        vector_norm(&u.apply(&c)) == vector_norm(&c)
    })
}
