//! Shared fixtures for the criterion benchmarks.

use eigenid::{random_hermitian, Ensemble, HermitianMatrix};

/// Complex Hermitian matrix with a simple, evenly spaced spectrum.
pub fn separated(n: usize, seed: u64) -> HermitianMatrix {
    let spectrum = (0..n).map(|k| k as f64 - n as f64 / 2.0).collect();
    random_hermitian(n, seed, &Ensemble::PrescribedSpectrum(spectrum)).expect("n >= 1")
}

pub fn gaussian(n: usize, seed: u64) -> HermitianMatrix {
    random_hermitian(n, seed, &Ensemble::ComplexHermitian).expect("n >= 1")
}
