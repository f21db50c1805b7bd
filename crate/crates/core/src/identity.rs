//! The eigenvector–eigenvalue identity for Hermitian matrices:
//!
//! ```text
//! |v_{i,j}|^2 * prod_{k != i} (lam_i - lam_k)  =  prod_k (lam_i - mu_k(M_j))
//! ```
//!
//! where `mu(M_j)` is the spectrum of `A` with row and column `j` deleted.
//! Both sides are evaluated from independent data: the left from the
//! eigenvectors, the right from the minor spectra only. Rearranging gives the
//! squared eigenvector moduli from spectra alone.
//!
//! Indexing: `i` selects the eigenvalue in ascending order and `j` the
//! eigenvector component (equivalently the deleted row/column). Both are
//! 0-based here.

use crate::eigen::{eigh, EigenDecomposition};
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

pub const DEFAULT_IDENTITY_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_GAP_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_INTERLACING_SLACK: f64 = 1e-10;
/// Reconstructed entries in `[-CLAMP_FLOOR, 0)` are rounded up to zero.
pub const CLAMP_FLOOR: f64 = 1e-12;

/// Spectra of the `n` principal minors; `spectra[j]` belongs to `M_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorSpectra {
    pub spectra: Vec<Vec<f64>>,
    /// Low-order corrections, same shape as `spectra`, or empty for none.
    pub tails: Vec<Vec<f64>>,
}

impl MinorSpectra {
    /// Spectra without corrections.
    pub fn new(spectra: Vec<Vec<f64>>) -> Self {
        MinorSpectra { spectra, tails: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.spectra.len()
    }

    fn tails(&self, j: usize) -> &[f64] {
        self.tails.get(j).map_or(&[], Vec::as_slice)
    }
}

/// Refined spectra of every principal minor.
pub fn minor_spectra(a: &HermitianMatrix) -> Result<MinorSpectra> {
    let n = a.order();
    if n < 2 {
        return Err(Error::TooSmall { order: n });
    }
    let (spectra, tails) = (0..n)
        .map(|j| {
            let d = eigh(&a.principal_minor(j)?).map_err(|e| match e {
                Error::NoConvergence { index, .. } => Error::NoConvergence { index, minor: Some(j + 1) },
                other => other,
            })?;
            Ok((d.eigenvalues, d.eigenvalue_tails))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(MinorSpectra { spectra, tails })
}

/// `|v_{i,j}|^2` grid: entry `(i, j)` is the squared modulus of component `j`
/// of the eigenvector for the `i`-th smallest eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeMatrix {
    order: usize,
    values: Vec<f64>,
}

impl MagnitudeMatrix {
    pub fn from_eigenvectors(d: &EigenDecomposition) -> Self {
        let n = d.order();
        let values = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| d.component(i, j).norm_sqr())
            .collect();
        MagnitudeMatrix { order: n, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.order).map(|j| (0..self.order).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Largest deviation of any row or column sum from 1.
    pub fn stochastic_defect(&self) -> f64 {
        self.row_sums()
            .into_iter()
            .chain(self.column_sums())
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise absolute difference.
    pub fn max_deviation(&self, other: &MagnitudeMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Product with factors multiplied in ascending order of magnitude.
fn ordered_product(mut factors: Vec<f64>) -> f64 {
    factors.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    factors.into_iter().product()
}

fn tail(tails: &[f64], k: usize) -> f64 {
    tails.get(k).copied().unwrap_or(0.0)
}

/// `(x + tx) - (y + ty)`; the leading difference is exact when `x` and `y`
/// are close, so the tails carry the remaining digits.
fn difference(x: f64, tx: f64, y: f64, ty: f64) -> f64 {
    (x - y) + (tx - ty)
}

fn eigen_denominator(lam: &[f64], tails: &[f64], i: usize) -> f64 {
    let (li, ti) = (lam[i], tail(tails, i));
    ordered_product(
        (0..lam.len()).filter(|&k| k != i).map(|k| difference(li, ti, lam[k], tail(tails, k))).collect(),
    )
}

fn minor_product(li: f64, ti: f64, minor: &[f64], tails: &[f64]) -> f64 {
    ordered_product(minor.iter().enumerate().map(|(k, &mu)| difference(li, ti, mu, tail(tails, k))).collect())
}

fn check_minors(lam: &[f64], minors: &MinorSpectra) -> Result<()> {
    let n = lam.len();
    if minors.order() != n {
        return Err(Error::DimensionMismatch { expected: n, found: minors.order() });
    }
    if let Some(bad) = minors.spectra.iter().find(|s| s.len() + 1 != n) {
        return Err(Error::DimensionMismatch { expected: n.saturating_sub(1), found: bad.len() });
    }
    Ok(())
}

/// Both sides of the identity at eigenvalue `i`, component `j`.
pub fn identity_sides(
    lam: &[f64],
    minors: &MinorSpectra,
    mags: &MagnitudeMatrix,
    i: usize,
    j: usize,
) -> Result<(f64, f64)> {
    sides(lam, &[], minors, mags, i, j)
}

fn sides(
    lam: &[f64],
    lam_tails: &[f64],
    minors: &MinorSpectra,
    mags: &MagnitudeMatrix,
    i: usize,
    j: usize,
) -> Result<(f64, f64)> {
    let n = lam.len();
    check_minors(lam, minors)?;
    if mags.order() != n {
        return Err(Error::DimensionMismatch { expected: n, found: mags.order() });
    }
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx + 1, order: n });
        }
    }
    let lhs = mags.get(i, j) * eigen_denominator(lam, lam_tails, i);
    let rhs = minor_product(lam[i], tail(lam_tails, i), &minors.spectra[j], minors.tails(j));
    Ok((lhs, rhs))
}

/// Scale-aware discrepancy `|lhs - rhs| / (1 + |lhs| + |rhs|)`.
pub fn normalized_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs())
}

/// Typical size of either side of the identity: `(1 + spectral range)^(n-1)`.
/// Used to judge when a side is negligible.
pub fn product_scale(lam: &[f64]) -> f64 {
    let range = lam.last().copied().unwrap_or(0.0) - lam.first().copied().unwrap_or(0.0);
    (1.0 + range.abs()).powi(lam.len().saturating_sub(1) as i32)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCell {
    pub i: usize,
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_gap: f64,
    pub normalized_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub order: usize,
    /// Row-major over `(i, j)`.
    pub cells: Vec<IdentityCell>,
    pub max_normalized_gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn cell(&self, i: usize, j: usize) -> &IdentityCell {
        &self.cells[i * self.order + j]
    }

    /// The first cell attaining the maximum normalized gap.
    pub fn worst_cell(&self) -> &IdentityCell {
        self.cells
            .iter()
            .reduce(|best, c| if c.normalized_gap > best.normalized_gap { c } else { best })
            .expect("report has at least one cell")
    }
}

/// Evaluates the identity on every `(i, j)` cell of `a`.
pub fn verify_identity(a: &HermitianMatrix, tol: f64) -> Result<IdentityReport> {
    let decomp = eigh(a)?;
    let minors = minor_spectra(a)?;
    verify_with(&decomp, &minors, tol)
}

/// As [`verify_identity`] with precomputed decomposition and minor spectra.
pub fn verify_with(decomp: &EigenDecomposition, minors: &MinorSpectra, tol: f64) -> Result<IdentityReport> {
    let n = decomp.order();
    if n < 2 {
        return Err(Error::TooSmall { order: n });
    }
    let lam = &decomp.eigenvalues;
    let mags = MagnitudeMatrix::from_eigenvectors(decomp);
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (lhs, rhs) = sides(lam, &decomp.eigenvalue_tails, minors, &mags, i, j)?;
            cells.push(IdentityCell {
                i,
                j,
                lhs,
                rhs,
                abs_gap: (lhs - rhs).abs(),
                normalized_gap: normalized_gap(lhs, rhs),
            });
        }
    }
    let max_normalized_gap = cells.iter().map(|c| c.normalized_gap).fold(0.0, f64::max);
    Ok(IdentityReport { order: n, cells, max_normalized_gap, tolerance: tol, pass: max_normalized_gap <= tol })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGapInfo {
    /// Smallest distance between two eigenvalues; infinite for order 1.
    pub min_gap: f64,
    pub range: f64,
    pub simple: bool,
}

impl SpectralGapInfo {
    pub fn threshold(&self, gap_tol: f64) -> f64 {
        gap_tol * (1.0 + self.range)
    }
}

pub fn gap_analysis(lam: &[f64], gap_tol: f64) -> Result<SpectralGapInfo> {
    if lam.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let mut sorted = lam.to_vec();
    sorted.sort_by(f64::total_cmp);
    let min_gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let range = sorted[sorted.len() - 1] - sorted[0];
    let simple = min_gap > gap_tol * (1.0 + range);
    Ok(SpectralGapInfo { min_gap, range, simple })
}

/// Squared eigenvector moduli from the spectrum of `A` and of its minors.
pub fn reconstruct_magnitudes(lam: &[f64], minors: &MinorSpectra, gap_tol: f64) -> Result<MagnitudeMatrix> {
    let info = gap_analysis(lam, gap_tol)?;
    check_minors(lam, minors)?;
    if !info.simple {
        return Err(Error::DegenerateSpectrum { min_gap: info.min_gap, threshold: info.threshold(gap_tol) });
    }
    let n = lam.len();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        let denom = eigen_denominator(lam, &[], i);
        for j in 0..n {
            let value = minor_product(lam[i], 0.0, &minors.spectra[j], minors.tails(j)) / denom;
            if value < -CLAMP_FLOOR {
                return Err(Error::NegativeMagnitude { row: i + 1, col: j + 1, value });
            }
            values.push(value.max(0.0));
        }
    }
    Ok(MagnitudeMatrix { order: n, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interlacing {
    pub pass: bool,
    /// 0-based `k` of the first violated inequality pair.
    pub first_violation: Option<usize>,
}

/// Checks `lam[k] - slack <= minor[k] <= lam[k+1] + slack` for every `k`.
pub fn interlacing_check(lam: &[f64], minor: &[f64], slack: f64) -> Result<Interlacing> {
    if lam.is_empty() || minor.len() + 1 != lam.len() {
        return Err(Error::LengthMismatch { full: lam.len(), minor: minor.len() });
    }
    let first_violation = minor
        .iter()
        .enumerate()
        .position(|(k, &mu)| !(lam[k] - slack <= mu && mu <= lam[k + 1] + slack));
    Ok(Interlacing { pass: first_violation.is_none(), first_violation })
}
