use crate::error::{PadicError, Result};

/// Largest prime accepted by the trial-division check.
pub const MAX_PRIME: u64 = 1 << 31;

/// Default cap on Frobenius periods when sizing iteration budgets.
pub const DEFAULT_PERIOD_CAP: u32 = 6;

/// Prime, absolute precision and iteration budget shared by every scalar of a computation.
///
/// All ring elements are realized modulo `p^m`; `p^m` must fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    p: u64,
    m: u32,
    max_iters: u32,
    modulus: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrecisionContext {
    /// Context with the default budget `m * DEFAULT_PERIOD_CAP + 4`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_period_cap(p, m, DEFAULT_PERIOD_CAP)
    }

    /// Context whose fixed-point budget is `m * n_max + 4`.
    pub fn with_period_cap(p: u64, m: u32, n_max: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if m == 0 {
            return Err(PadicError::InvalidPrecision("m must be at least 1".into()));
        }
        let modulus = p.checked_pow(m).ok_or_else(|| {
            PadicError::InvalidPrecision(format!("{p}^{m} does not fit in 64 bits"))
        })?;
        let max_iters = m
            .checked_mul(n_max.max(1))
            .and_then(|x| x.checked_add(4))
            .ok_or_else(|| PadicError::InvalidPrecision("iteration budget overflows".into()))?;
        Ok(PrecisionContext {
            p,
            m,
            max_iters,
            modulus,
        })
    }

    pub fn with_max_iters(self, max_iters: u32) -> Result<Self> {
        if max_iters < self.m {
            return Err(PadicError::InvalidPrecision(format!(
                "max_iters {max_iters} is below the precision {}",
                self.m
            )));
        }
        Ok(PrecisionContext { max_iters, ..self })
    }

    /// Same prime and period cap at absolute precision `m`.
    pub fn with_precision(&self, m: u32) -> Result<Self> {
        let cap = (self.max_iters.saturating_sub(4) / self.m).max(1);
        Self::with_period_cap(self.p, m, cap)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn max_iters(&self) -> u32 {
        self.max_iters
    }

    /// `p^m`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^k` for `k <= m`.
    pub fn pow_p(&self, k: u32) -> u64 {
        debug_assert!(k <= self.m);
        self.p.pow(k)
    }

    pub(crate) fn same_ring(&self, other: &PrecisionContext) -> bool {
        self.p == other.p && self.m == other.m
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 + b as u128) % modulus as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `modulus`, if `gcd(a, modulus) = 1`.
pub(crate) fn inv_mod(a: u64, modulus: u64) -> Option<u64> {
    use num_integer::Integer;
    let e = (a as i128).extended_gcd(&(modulus as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(modulus as i128) as u64)
}
