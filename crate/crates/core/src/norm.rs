use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A value of the p-adic absolute value, `p^(-valuation)`, or zero.
///
/// Ordered as real numbers: zero is the smallest norm and a larger valuation
/// means a smaller norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Norm {
    valuation: Option<i64>,
}

impl Norm {
    pub const ZERO: Norm = Norm { valuation: None };
    pub const ONE: Norm = Norm { valuation: Some(0) };

    /// The norm `p^(-valuation)`.
    pub fn from_valuation(valuation: i64) -> Self {
        Norm {
            valuation: Some(valuation),
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Product of norms; the norm is multiplicative so this is `|xy|` for `|x|`, `|y|`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Norm) -> Norm {
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => Norm::from_valuation(a + b),
            _ => Norm::ZERO,
        }
    }

    /// The real number `p^(-v)`.
    pub fn value(&self, p: u64) -> f64 {
        match self.valuation {
            None => 0.0,
            Some(v) => (p as f64).powf(-(v as f64)),
        }
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.valuation, other.valuation) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(v) => write!(f, "p^{}", -v),
        }
    }
}
