//! Spectral theory of Teichmüller and Hermite matrices: Lagrange projectors,
//! idempotent lifting, digit expansions, the spectral measure, Jordan
//! decomposition and the spectrum diameter.

mod decomposition;
mod diameter;
mod hermite;
mod idempotent;
mod jordan;

pub use decomposition::{
    factorial_chain_spectral, teichmuller_defect, teichmuller_spectral, DecompositionCheck,
    SpectralDecomposition, SpectralPoint,
};
pub use diameter::{spectrum_diameter, uncertainty_check, DiameterReport, UncertaintyReport};
pub use hermite::{
    hermite_digits_matrix, measure_from_digits, spectral_integral, spectral_measure,
    spectral_measure_with_period, HermiteCheck, HermiteDigitsMatrix, MeasureCheck,
    SpectralMeasure,
};
pub use idempotent::{lift_idempotent, lift_orthogonal_family};
pub use jordan::{jordan_decompose, jordan_decompose_from, JordanPair};
