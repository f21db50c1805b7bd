//! Seeded random Hermitian and unitary matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, ComplexScalar, HermitianMatrix, HermitianMode};

/// Distribution a random Hermitian matrix is drawn from.
#[derive(Debug, Clone, PartialEq)]
pub enum Ensemble {
    /// `(G + G')/2` for a real standard normal `G`.
    RealSymmetric,
    /// `(G + G*)/2` for `G` with independent standard normal real and
    /// imaginary parts.
    ComplexHermitian,
    /// `Q diag(spectrum) Q*` for a seeded random unitary `Q`.
    PrescribedSpectrum(Vec<f64>),
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> ComplexScalar {
    let re = gaussian(rng);
    let im = gaussian(rng);
    Complex64::new(re, im)
}

/// Deterministic random Hermitian matrix of order `n`.
pub fn random_hermitian(n: usize, seed: u64, ensemble: &Ensemble) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::TooSmall { order: 0 });
    }
    let mut rng = rng_for(seed);
    let grid = match ensemble {
        Ensemble::RealSymmetric => CMatrix::from_fn(n, n, |_, _| Complex64::new(gaussian(&mut rng), 0.0)),
        Ensemble::ComplexHermitian => CMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng)),
        Ensemble::PrescribedSpectrum(spectrum) => {
            if spectrum.len() != n {
                return Err(Error::BadSpectrumLength { expected: n, found: spectrum.len() });
            }
            let q = orthonormalize(&CMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng)));
            let mut scaled = q.clone();
            for i in 0..n {
                for (k, &lambda) in spectrum.iter().enumerate() {
                    scaled[(i, k)] *= lambda;
                }
            }
            &scaled * &q.adjoint()
        }
    };
    HermitianMatrix::from_entries(grid, HermitianMode::Symmetrize)
}

/// Seeded random unitary: Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = rng_for(seed);
    let g = CMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng));
    orthonormalize(&g)
}

/// Modified Gram–Schmidt over the columns, run twice per column.
fn orthonormalize(g: &CMatrix) -> CMatrix {
    let n = g.nrows();
    let m = g.ncols();
    let mut cols: Vec<Vec<ComplexScalar>> = (0..m).map(|j| g.column(j)).collect();
    for j in 0..m {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        for _pass in 0..2 {
            for q in done.iter() {
                let proj: ComplexScalar = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut() {
            *vi /= norm;
        }
    }
    CMatrix::from_fn(n, m, |i, j| cols[j][i])
}
