//! Worked examples, each compared against a value computed independently here.

mod common;

use common::*;
use padic_spectral::linalg::{certify_orthogonal_projection, is_gl_zp, is_orthonormal_columns};
use padic_spectral::operators::{
    commutator_defect, euler_operator, kochubei_lower, kochubei_raise, ladder, ladder_is_orthogonal,
    number_operator, shift,
    KochubeiLower, KochubeiRaise, MahlerVector, Shift, TateLower, TateRaise, TateVector,
};
use padic_spectral::orbit::{classify_orbit, OrbitClass};
use padic_spectral::padic::{frobenius_step, teichmuller_digits, teichmuller_lift};
use padic_spectral::residue::{build_modulus, fq_frobenius, FqField};
use padic_spectral::spectral::{
    hermite_digits_matrix, jordan_decompose, lift_idempotent, spectral_integral,
    spectral_measure, spectrum_diameter, teichmuller_spectral, uncertainty_check,
};
use padic_spectral::witt::{enumerate_teichmuller, reduce_mod_p, teichmuller_lift_ext};
use padic_spectral::{ExtRing, HermiteFailure, Norm, PadicError, PadicScalar, Scalar, ScalarRing, UMatrix};

#[test]
fn rational_half_mod_81() {
    let c = ctx(3, 4);
    let half = PadicScalar::from_rational(1, 2, c).unwrap();
    let brute = (0..81u64).find(|u| 2 * u % 81 == 1).unwrap();
    assert_eq!((half.valuation(), half.unit()), (Some(0), brute));
    assert_eq!(brute, 41);
    assert!(PadicScalar::from_rational(0, 1, c).unwrap().is_zero());
    let nine = PadicScalar::from_rational(9, 1, c).unwrap();
    assert_eq!((nine.valuation(), nine.unit()), (Some(2), 1));
}

#[test]
fn frobenius_step_examples() {
    let c = ctx(5, 2);
    let x = frobenius_step(&int(c, 2), 1).unwrap();
    assert_eq!(x.to_residue().unwrap() as u128, modpow(2, 5, 25));
    assert_eq!(x.to_residue().unwrap(), 7);
    assert_eq!(frobenius_step(&int(c, 1), 4).unwrap(), int(c, 1));
    let c3 = ctx(5, 3);
    assert!(frobenius_step(&int(c3, 5), 1).unwrap().is_zero());
}

/// Iterates `x -> x^p mod p^m` until it stops moving.
fn brute_lift(r: u128, p: u128, m: u32) -> u128 {
    let q = p.pow(m);
    let mut x = r;
    loop {
        let y = modpow(x, p, q);
        if y == x {
            return x;
        }
        x = y;
    }
}

#[test]
fn teichmuller_lift_examples() {
    assert_eq!(brute_lift(2, 5, 2), 7);
    assert_eq!(brute_lift(2, 5, 3), 57);
    for (m, expected) in [(2, 7), (3, 57)] {
        let w = teichmuller_lift(2, ctx(5, m)).unwrap();
        assert_eq!(w.to_residue().unwrap() as u128, brute_lift(2, 5, m));
        assert_eq!(w.to_residue().unwrap(), expected);
    }
    for p in [3u64, 5, 7] {
        for m in 1..=4 {
            let c = ctx(p, m);
            assert_eq!(teichmuller_lift(p - 1, c).unwrap(), int(c, -1));
        }
    }
}

#[test]
fn digit_examples() {
    let c = ctx(5, 2);
    let d = teichmuller_digits(&int(c, 2)).unwrap();
    assert_eq!(d.lead_valuation, 0);
    let (d0, d1) = (d.digits[0].to_residue().unwrap(), d.digits[1].to_residue().unwrap());
    assert_eq!((d0, d1), (7, 24));
    assert_eq!((d0 + 5 * d1) % 25, 2);
    assert_eq!(d1 as u128, brute_lift(4, 5, 2));

    let one = teichmuller_digits(&int(c, 1)).unwrap();
    assert_eq!(one.indices(), vec![1, 0]);

    let c3 = ctx(3, 4);
    let u = int(c3, 5);
    let pu = teichmuller_digits(&u.shift(1)).unwrap();
    let du = teichmuller_digits(&u).unwrap();
    assert_eq!(pu.lead_valuation, 1);
    assert_eq!(pu.digits[..3], du.digits[..3]);
}

#[test]
fn orbit_examples() {
    let c = ctx(5, 2);
    assert_eq!(classify_orbit(&int(c, 7), 3).unwrap(), OrbitClass::Periodic(1));
    assert_eq!(modpow(7, 5, 25), 7);
    assert_eq!(
        classify_orbit(&int(c, 2), 3).unwrap(),
        OrbitClass::QuasiPeriodic { period: 1, limit: int(c, 7) }
    );
    let nil = imat(ctx(3, 3), &[&[0, 1], &[0, 0]]);
    assert!(matches!(classify_orbit(&nil, 2).unwrap(), OrbitClass::TopNilpotent { .. }));
}

/// Monic polynomials of degree 2 over F_p with no root, constant-first, in
/// lexicographic order of `(c0, c1)`.
fn brute_irreducible_quadratics(p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for c0 in 0..p {
        for c1 in 0..p {
            if (0..p).all(|x| (x * x + c1 * x + c0) % p != 0) {
                out.push(vec![c0, c1, 1]);
            }
        }
    }
    out
}

#[test]
fn modulus_examples() {
    assert_eq!(build_modulus(2, 1).unwrap(), vec![0, 1]);
    assert_eq!(build_modulus(2, 2).unwrap(), brute_irreducible_quadratics(2)[0]);
    assert_eq!(build_modulus(2, 2).unwrap(), vec![1, 1, 1]);
    assert_eq!(build_modulus(3, 2).unwrap(), brute_irreducible_quadratics(3)[0]);
    assert_eq!(build_modulus(3, 2).unwrap(), vec![1, 0, 1]);
}

#[test]
fn residue_frobenius_examples() {
    let f9 = FqField::new(3, 2).unwrap();
    let x = f9.element(&[0, 1]).unwrap();
    // X^3 = X * X^2 = X * (-1) mod X^2 + 1
    assert_eq!(fq_frobenius(&x), f9.element(&[0, 2]).unwrap());
    assert_eq!(fq_frobenius(&f9.one()), f9.one());
    for a in f9.elements().unwrap() {
        assert_eq!(a.frobenius_pow(2), a);
    }
}

#[test]
fn extension_lift_examples() {
    let f9 = FqField::new(3, 2).unwrap();
    let x = f9.element(&[0, 1]).unwrap();
    let w = teichmuller_lift_ext(&x, 2).unwrap();
    assert_eq!(Scalar::pow(&w, 9), w);
    assert_eq!(reduce_mod_p(&w).unwrap(), x);
    // uniqueness: brute-force every element of O_K/9 over X
    let ring = ExtRing::new(3, 2, 2).unwrap();
    let solutions: Vec<_> = (0..81u64)
        .map(|i| ring.from_residues(&[i % 9, i / 9]))
        .filter(|y| Scalar::pow(y, 9) == *y && reduce_mod_p(y).unwrap() == x)
        .collect();
    assert_eq!(solutions, vec![w]);
    assert!(teichmuller_lift_ext(&f9.zero(), 2).unwrap().is_zero());
    assert_eq!(teichmuller_lift_ext(&f9.one(), 2).unwrap(), ring.one());
}

#[test]
fn enumeration_examples() {
    let pts: Vec<u64> = enumerate_teichmuller(3, 1, 2)
        .unwrap()
        .iter()
        .map(|x| x.coords()[0].to_residue().unwrap())
        .collect();
    let brute: Vec<u64> = (0..9u64).filter(|&r| modpow(r as u128, 3, 9) == r as u128).collect();
    assert_eq!(pts, brute);
    assert_eq!(pts, vec![0, 1, 8]);
    for m in 1..=4 {
        let two: Vec<u64> = enumerate_teichmuller(2, 1, m)
            .unwrap()
            .iter()
            .map(|x| x.coords()[0].to_residue().unwrap())
            .collect();
        assert_eq!(two, vec![0, 1]);
    }
    assert_eq!(enumerate_teichmuller(2, 2, 1).unwrap().len(), 4);
}

#[test]
fn reduction_examples() {
    let ring = ExtRing::new(5, 1, 2).unwrap();
    assert_eq!(reduce_mod_p(&ring.from_integer(7)).unwrap().coords(), &[7 % 5]);
    assert!(reduce_mod_p(&ring.from_integer(5)).unwrap().is_zero());
    assert_eq!(reduce_mod_p(&ring.one()).unwrap(), ring.residue_field().one());
}

#[test]
fn gl_examples() {
    let c = ctx(3, 3);
    let det = |a: i128, b: i128, cc: i128, d: i128| a * d - b * cc;
    assert!(is_gl_zp(&imat(c, &[&[1, 1], &[0, 1]])));
    assert!(is_gl_zp(&imat(c, &[&[3, 1], &[1, 0]])));
    assert_ne!(det(3, 1, 1, 0) % 3, 0);
    assert!(!is_gl_zp(&imat(c, &[&[3, 0], &[0, 1]])));
    assert_eq!(det(3, 0, 0, 1) % 3, 0);
    assert!(is_gl_zp(&UMatrix::<PadicScalar>::identity(c, 3)));
}

#[test]
fn projection_certificate_examples() {
    let c = ctx(3, 4);
    let mut r = rng(11);
    let id = UMatrix::<PadicScalar>::identity(c, 2);
    assert!(certify_orthogonal_projection(&id, 16, &mut r).is_valid());
    let a = imat(c, &[&[0, 1], &[1, 0]]);
    let half = PadicScalar::from_rational(1, 2, c).unwrap();
    let pi = id.add(&a).scale(&half);
    assert!(a.mul(&a).is_identity());
    assert_eq!(half.norm(), Norm::ONE);
    let cert = certify_orthogonal_projection(&pi, 16, &mut r);
    assert!(cert.is_valid() && cert.conditions_agree());

    let bad = imat(c, &[&[1, 3], &[0, 0]]).add(&imat(c, &[&[0, 0], &[0, 9]]));
    let cert = certify_orthogonal_projection(&bad, 16, &mut r);
    let direct = bad.mul(&bad).sub(&bad).norm();
    assert_eq!(cert.idempotency_defect, direct);
    assert!(!direct.is_zero());
    assert_eq!(cert.failing_condition(), Some("idempotency"));
}

#[test]
fn orthonormal_columns_examples() {
    let c = ctx(5, 3);
    let mut r = rng(12);
    assert!(is_orthonormal_columns(&UMatrix::<PadicScalar>::identity(c, 3), 16, &mut r));
    assert!(is_orthonormal_columns(&imat(c, &[&[1, 1], &[0, 1]]), 32, &mut r));
    assert!(!is_orthonormal_columns(&imat(c, &[&[5, 0], &[0, 1]]), 16, &mut r));
}

#[test]
fn idempotent_examples() {
    let c = ctx(3, 4);
    let id = UMatrix::<PadicScalar>::identity(c, 2);
    assert_eq!(lift_idempotent(&id).unwrap(), id);
    let a = imat(c, &[&[1, 3], &[0, 0]]);
    let pi = lift_idempotent(&a).unwrap();
    assert_eq!(pi.mul(&pi), pi);
    assert_eq!(pi.frobenius(), pi);
    assert!(pi.sub(&imat(c, &[&[1, 0], &[0, 0]])).valuation().unwrap() >= 1);
    // the sigma orbit of a stabilizes on pi
    let mut y = a.clone();
    for _ in 0..8 {
        y = y.frobenius();
    }
    assert_eq!(y, pi);
    let e = imat(c, &[&[0, 1], &[0, 1]]);
    assert_eq!(e.mul(&e), e);
    assert_eq!(lift_idempotent(&e).unwrap(), e);
}

#[test]
fn spectral_examples() {
    let c = ctx(3, 4);
    let id = UMatrix::<PadicScalar>::identity(c, 2);
    let d = teichmuller_spectral(&id, 1).unwrap();
    assert_eq!(d.points.len(), 1);
    assert_eq!((d.points[0].eigenvalue, d.points[0].projector.clone()), (int(c, 1), id.clone()));

    let x = imat(c, &[&[0, 1], &[1, 0]]);
    assert_eq!(x.pow(3), x);
    let half = PadicScalar::from_rational(1, 2, c).unwrap();
    let d = teichmuller_spectral(&x, 1).unwrap();
    let got: Vec<_> = d.points.iter().map(|pt| (pt.eigenvalue, pt.projector.clone())).collect();
    assert_eq!(
        got,
        vec![
            (int(c, 1), id.add(&x).scale(&half)),
            (int(c, -1), id.sub(&x).scale(&half)),
        ]
    );

    let c5 = ctx(5, 2);
    let w2 = teichmuller_lift(2, c5).unwrap();
    let dx = diag(c5, &[int(c5, 1), w2]);
    let d = teichmuller_spectral(&dx, 1).unwrap();
    let got: Vec<_> = d.points.iter().map(|pt| (pt.eigenvalue.to_residue().unwrap(), pt.projector.clone())).collect();
    assert_eq!(
        got,
        vec![
            (1, imat(c5, &[&[1, 0], &[0, 0]])),
            (brute_lift(2, 5, 2) as u64, imat(c5, &[&[0, 0], &[0, 1]])),
        ]
    );
}

#[test]
fn hermite_examples() {
    let c = ctx(3, 4);
    let a = imat(c, &[&[1, 3], &[0, 4]]);
    let peeled = a.sub(&UMatrix::identity(c, 2)).shift(-1);
    assert_eq!(peeled.mul(&peeled), peeled);
    let h = hermite_digits_matrix(&a, 1).unwrap();
    assert_eq!(h.digits[0], UMatrix::identity(c, 2));
    assert_eq!(h.digits[1], peeled);
    assert!(h.digits[2..].iter().all(UMatrix::is_zero));
    assert_eq!(h.reassemble(), a);

    let u = imat(c, &[&[1, 1], &[0, 1]]);
    // E_12 is not zero mod 3, but its sigma limit is
    let e12 = u.sub(&UMatrix::identity(c, 2));
    assert!(e12.frobenius().is_zero() && e12.valuation() == Some(0));
    assert!(matches!(
        hermite_digits_matrix(&u, 1),
        Err(PadicError::NotHermite { stage: 1, reason: HermiteFailure::NilpotentResidue, .. })
    ));

    let w = [teichmuller_lift(1, c).unwrap(), teichmuller_lift(2, c).unwrap()];
    let h = hermite_digits_matrix(&diag(c, &w), 1).unwrap();
    for (j, dj) in h.digits.iter().enumerate() {
        let expected: Vec<PadicScalar> = w.iter().map(|x| teichmuller_digits(x).unwrap().digits[j]).collect();
        assert_eq!(*dj, diag(c, &expected));
    }
}

#[test]
fn measure_examples() {
    let c5 = ctx(5, 3);
    let lam = teichmuller_lift(2, c5).unwrap();
    let mu = spectral_measure(&UMatrix::scalar(c5, 2, &lam), 2).unwrap();
    assert_eq!(mu.node_counts(), vec![1, 1]);
    let leaf = mu.leaves().keys().next().unwrap().clone();
    assert_eq!(leaf, teichmuller_digits(&lam).unwrap().indices()[..2].to_vec());
    assert!(mu.leaves()[&leaf].is_identity());

    let c = ctx(3, 3);
    let mu = spectral_measure(&imat(c, &[&[1, 0], &[0, 4]]), 2).unwrap();
    assert!(mu.levels[0][&vec![1]].is_identity());
    assert_eq!(mu.levels[1][&vec![1, 0]], imat(c, &[&[1, 0], &[0, 0]]));
    assert_eq!(mu.levels[1][&vec![1, 1]], imat(c, &[&[0, 0], &[0, 1]]));

    let g = imat(c, &[&[1, 1], &[0, 1]]);
    let ginv = g.inverse().unwrap();
    let a = imat(c, &[&[1, 3], &[0, 4]]);
    assert_eq!(g.mul(&imat(c, &[&[1, 0], &[0, 4]])).mul(&ginv), a);
    let mu = spectral_measure(&a, 2).unwrap();
    assert_eq!(mu.leaves().len(), 2);
    for (addr, pi) in mu.leaves() {
        let diag_pi = &spectral_measure(&imat(c, &[&[1, 0], &[0, 4]]), 2).unwrap().levels[1][addr];
        assert_eq!(*pi, g.mul(diag_pi).mul(&ginv));
    }
}

#[test]
fn integral_examples() {
    let c = ctx(3, 3);
    let id = UMatrix::<PadicScalar>::identity(c, 2);
    for depth in 1..=3 {
        let (i, r) = spectral_integral(&spectral_measure(&id, depth).unwrap());
        assert!(i.is_identity() && r.is_identity());
    }
    let a = imat(c, &[&[1, 0], &[0, 4]]);
    let (i, r) = spectral_integral(&spectral_measure(&a, 2).unwrap());
    assert!(i.is_identity());
    assert!(r.sub(&a).valuation().is_none_or(|v| v >= 2));
    assert_eq!(r, imat(c, &[&[1, 0], &[0, 1 + 3]]));

    let b = imat(c, &[&[2, 3], &[0, 5]]);
    for depth in 1..=2 {
        let (_, r) = spectral_integral(&spectral_measure(&b, depth).unwrap());
        assert!(r.sub(&b).norm() <= Norm::from_valuation(depth as i64));
    }
}

#[test]
fn jordan_examples() {
    let c = ctx(3, 4);
    let a = imat(c, &[&[1, 1], &[0, 1]]);
    for k in 0..5u32 {
        assert_eq!(a.frobenius_pow(k), imat(c, &[&[1, 3i128.pow(k)], &[0, 1]]));
    }
    let j = jordan_decompose(&a, 3).unwrap();
    assert!(j.semisimple.is_identity());
    assert_eq!(j.nilpotent, imat(c, &[&[0, 1], &[0, 0]]));

    let t = diag(c, &[teichmuller_lift(2, c).unwrap(), int(c, 1)]);
    let j = jordan_decompose(&t, 3).unwrap();
    assert_eq!((j.semisimple.clone(), j.nilpotent.is_zero()), (t, true));
    let n = imat(c, &[&[0, 2, 1], &[0, 0, 1], &[0, 0, 0]]);
    let j = jordan_decompose(&n, 3).unwrap();
    assert!(j.semisimple.is_zero());
    assert_eq!(j.nilpotent, n);
}

#[test]
fn diameter_examples() {
    let c = ctx(3, 4);
    let lam = UMatrix::scalar(c, 3, &int(c, 5));
    assert_eq!(spectrum_diameter(&lam, 1).unwrap().diameter, Norm::ZERO);
    assert_eq!(spectrum_diameter(&diag(c, &[int(c, 1), int(c, 4)]), 1).unwrap().diameter, int(c, 3).norm());
    assert_eq!(spectrum_diameter(&diag(c, &[int(c, 1), int(c, -1)]), 1).unwrap().diameter, int(c, 2).norm());
}

#[test]
fn uncertainty_examples() {
    let c = ctx(3, 4);
    let a = diag(c, &[int(c, 1), int(c, -1)]);
    let b = imat(c, &[&[0, 1], &[1, 0]]);
    let psi = [int(c, 1), int(c, 0)];
    let direct = a.commutator(&b).apply(&psi);
    assert_eq!(direct, vec![int(c, 0), int(c, -2)]);
    let r = uncertainty_check(&a, &b, &psi, 1).unwrap();
    assert_eq!((r.lhs, r.rhs, r.holds), (Norm::ONE, Norm::ONE, true));

    let b2 = b.mul(&b).add(&b);
    assert!(b.commutator(&b2).is_zero());
    let r = uncertainty_check(&b, &b2, &psi, 1).unwrap();
    assert!(r.lhs.is_zero() && r.holds);

    let lam = UMatrix::scalar(c, 2, &int(c, 7));
    let r = uncertainty_check(&lam, &b, &psi, 1).unwrap();
    assert_eq!((r.lhs, r.rhs, r.holds), (Norm::ZERO, Norm::ZERO, true));
}

/// `f(x) = sum c_n binom(x, n)` over the integers.
fn mahler_eval(c: &[i128], x: i128) -> i128 {
    c.iter().enumerate().map(|(n, cn)| cn * binom(x, n)).sum()
}

fn residues(v: &MahlerVector) -> Vec<u64> {
    v.coeffs().iter().map(|x| x.to_residue().unwrap()).collect()
}

fn as_residues(c: &[i128], q: u64) -> Vec<u64> {
    c.iter().map(|x| x.rem_euclid(q as i128) as u64).collect()
}

/// Mahler coefficients of a function on `0..len` by forward differences.
fn mahler_coeffs(values: &[i128]) -> Vec<i128> {
    let mut diffs = values.to_vec();
    let mut out = Vec::new();
    for _ in 0..values.len() {
        out.push(diffs[0]);
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.is_empty() {
            break;
        }
    }
    out
}

#[test]
fn kochubei_operators_against_pointwise_definitions() {
    let len = 10;
    let c = ctx(3, 6);
    let q = c.modulus();
    for n in 0..len {
        let mut e = vec![0i128; len];
        e[n] = 1;
        let f = MahlerVector::from_integers(c, &e);
        // (a+ f)(x) = x f(x - 1); (a- f)(x) = f(x + 1) - f(x); (a* f)(x) = f(x + 1)
        let up: Vec<i128> = (0..len as i128).map(|x| x * mahler_eval(&e, x - 1)).collect();
        let down: Vec<i128> = (0..len as i128).map(|x| mahler_eval(&e, x + 1) - mahler_eval(&e, x)).collect();
        let sh: Vec<i128> = (0..len as i128).map(|x| mahler_eval(&e, x + 1)).collect();
        let up = as_residues(&mahler_coeffs(&up), q);
        let raised = kochubei_raise(&f);
        if n + 1 < len {
            assert_eq!(residues(&raised.value), up);
            assert!(!raised.lost);
            let mut expected = vec![0u64; len];
            expected[n + 1] = (n + 1) as u64;
            assert_eq!(up, expected);
        } else {
            assert!(raised.lost);
        }
        assert_eq!(residues(&kochubei_lower(&f)), as_residues(&mahler_coeffs(&down), q));
        assert_eq!(residues(&shift(&f)), as_residues(&mahler_coeffs(&sh), q));
    }
    let zero = MahlerVector::zero(c, len);
    assert!(kochubei_raise(&zero).value.is_zero());
    assert!(kochubei_lower(&MahlerVector::basis(c, len, 0)).is_zero());
    assert_eq!(kochubei_lower(&MahlerVector::basis(c, len, 1)), MahlerVector::basis(c, len, 0));
}

#[test]
fn number_operator_examples() {
    let c = ctx(5, 4);
    let len = 8;
    assert!(number_operator(&MahlerVector::basis(c, len, 0)).is_zero());
    let p5 = MahlerVector::basis(c, len, 5);
    assert_eq!(number_operator(&p5), p5.scale(&int(c, 5)));
    let ones = MahlerVector::from_integers(c, &[1; 8]);
    let expected: Vec<i128> = (0..8).collect();
    // the top coefficient has no partner above the truncation
    let mut got = number_operator(&ones);
    let mut want = MahlerVector::from_integers(c, &expected);
    got = MahlerVector::new(c, got.coeffs()[..len - 1].to_vec());
    want = MahlerVector::new(c, want.coeffs()[..len - 1].to_vec());
    assert_eq!(got, want);
}

#[test]
fn euler_examples() {
    let c = ctx(3, 4);
    let x3 = TateVector::basis(c, 6, 3);
    assert_eq!(euler_operator(&x3), x3.scale(&int(c, 3)));
    assert!(euler_operator(&TateVector::basis(c, 6, 0)).is_zero());
    let f = TateVector::from_integers(c, &[0, 1, 1, 0, 0, 0]);
    assert_eq!(euler_operator(&f), TateVector::from_integers(c, &[0, 1, 2, 0, 0, 0]));
}

#[test]
fn commutator_examples() {
    let c = ctx(2, 8);
    assert!(commutator_defect(&KochubeiLower, &KochubeiRaise, c, 16).is_zero());
    assert!(commutator_defect(&TateLower, &TateRaise::default(), c, 16).is_zero());
    assert!(commutator_defect(&Shift, &KochubeiRaise, c, 16).is_zero());
    // a+ a* is multiplication by x: x binom(x, n) = (n + 1) binom(x, n + 1) + n binom(x, n)
    let len = 10;
    for n in 0..len - 1 {
        let f = MahlerVector::basis(c, len, n);
        let g = kochubei_raise(&shift(&f)).value;
        let mut e = vec![0i128; len];
        e[n] = 1;
        let pointwise: Vec<i128> = (0..len as i128).map(|x| x * mahler_eval(&e, x)).collect();
        assert_eq!(residues(&g), as_residues(&mahler_coeffs(&pointwise), c.modulus()));
    }
}

#[test]
fn ladders_from_general_h() {
    let mut r = rng(17);
    for &p in &PRIMES {
        let c = ctx(p, 5);
        for _ in 0..20 {
            let h = TateRaise {
                h: (0..4).map(|_| c.random_element(&mut r)).collect(),
            };
            let steps = ladder(&h, &TateVector::basis(c, 12, 0), 8);
            // R^n 1 is monic of degree n with integral coefficients
            for (n, v) in steps.iter().enumerate() {
                assert_eq!(v.coeffs()[n], PadicScalar::one(c));
                assert!(v.coeffs()[n + 1..].iter().all(|x| x.is_zero()));
                assert!(v.norm() == Norm::ONE);
            }
            assert!(ladder_is_orthogonal(&steps, 40, &mut r), "p = {p}, h = {:?}", h.h);
        }
    }
}
