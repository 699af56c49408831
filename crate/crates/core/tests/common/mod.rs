#![allow(dead_code)]

use padic_spectral::padic::teichmuller_lift;
use padic_spectral::{PadicScalar, PrecisionContext, Scalar, ScalarRing, UMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(p: u64, m: u32) -> PrecisionContext {
    PrecisionContext::new(p, m).unwrap()
}

pub fn int(c: PrecisionContext, n: i128) -> PadicScalar {
    PadicScalar::from_integer(n, c)
}

pub fn imat(c: PrecisionContext, rows: &[&[i128]]) -> UMatrix<PadicScalar> {
    UMatrix::from_integers(c, rows).unwrap()
}

/// `b^e mod m` by square and multiply over `u128`.
pub fn modpow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn random_matrix<S: Scalar, R: Rng>(ring: &S::Ring, n: usize, rng: &mut R) -> UMatrix<S> {
    UMatrix::from_fn(ring.clone(), n, |_, _| ring.random_element(rng))
}

/// A uniformly random element of `GL_n(O/p^m)` with its inverse.
pub fn random_gl<S: Scalar, R: Rng>(ring: &S::Ring, n: usize, rng: &mut R) -> (UMatrix<S>, UMatrix<S>) {
    loop {
        let u = random_matrix::<S, R>(ring, n, rng);
        if u.is_gl() {
            let inv = u.inverse().unwrap();
            return (u, inv);
        }
    }
}

pub fn random_teich<R: Rng>(c: PrecisionContext, rng: &mut R) -> PadicScalar {
    teichmuller_lift(rng.gen_range(0..c.p()), c).unwrap()
}

pub fn random_unit<R: Rng>(c: PrecisionContext, rng: &mut R) -> PadicScalar {
    let t = teichmuller_lift(rng.gen_range(1..c.p()), c).unwrap();
    t.add(&c.random_element(rng).shift(1))
}

/// Diagonal entries drawn from a small pool so that repeated and nearby
/// eigenvalues are common.
pub fn random_spectrum<R: Rng>(c: PrecisionContext, n: usize, rng: &mut R) -> Vec<PadicScalar> {
    let pool_size = rng.gen_range(1..=n);
    let pool: Vec<PadicScalar> = (0..pool_size)
        .map(|_| {
            let x = c.random_element(rng);
            match rng.gen_range(0..4) {
                0 => x.shift(1),
                1 => PadicScalar::zero(c),
                _ => x,
            }
        })
        .collect();
    (0..n).map(|_| pool[rng.gen_range(0..pool_size)]).collect()
}

pub fn conjugate<S: Scalar>(u: &UMatrix<S>, d: &UMatrix<S>, uinv: &UMatrix<S>) -> UMatrix<S> {
    u.mul(d).mul(uinv)
}

pub fn diag(c: PrecisionContext, d: &[PadicScalar]) -> UMatrix<PadicScalar> {
    UMatrix::diagonal(c, d)
}

pub fn key(x: &PadicScalar) -> (Option<i64>, u64) {
    (x.valuation(), x.unit())
}

/// `max |d_i - d_j|` straight from a diagonal.
pub fn diagonal_diameter(d: &[PadicScalar]) -> padic_spectral::Norm {
    let mut out = padic_spectral::Norm::ZERO;
    for (i, x) in d.iter().enumerate() {
        for y in &d[i + 1..] {
            out = out.max(x.sub(y).norm());
        }
    }
    out
}

/// Binomial coefficient over `i128`, zero when `k > n`.
pub fn binom(n: i128, k: usize) -> i128 {
    if k as i128 > n || n < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
