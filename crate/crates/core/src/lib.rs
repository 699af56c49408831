//! Exact fixed-precision p-adic arithmetic with Teichmüller lifts, unramified
//! extensions and the spectral theory of p-adic Hermite operators.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod norm;
pub mod operators;
pub mod orbit;
pub mod padic;
pub mod residue;
pub mod scalar;
pub mod spectral;
pub mod witt;

pub use error::{HermiteFailure, PadicError, Result};
pub use linalg::UMatrix;
pub use norm::Norm;
pub use padic::{PadicScalar, PrecisionContext};
pub use scalar::{Scalar, ScalarRing};
pub use witt::{ExtRing, ExtScalar};
