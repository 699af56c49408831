//! Arithmetic in `Z_p` and `Q_p` at fixed precision, the Frobenius `x -> x^p`,
//! Teichmüller lifts and Teichmüller digit expansions.

mod context;
mod scalar;
mod teichmuller;

pub use context::{PrecisionContext, DEFAULT_PERIOD_CAP, MAX_PRIME};
pub use scalar::PadicScalar;
pub use teichmuller::{frobenius_step, teichmuller_digits, teichmuller_lift, TeichDigits};

pub(crate) use context::{add_mod, inv_mod, is_prime, mul_mod};
