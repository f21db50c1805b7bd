//! Dense Hermitian eigensolver.
//!
//! Complex Householder reflections reduce `A` to Hermitian tridiagonal form;
//! a diagonal phase transform then makes the off-diagonal real and
//! nonnegative, so the iteration runs on a real symmetric tridiagonal matrix.
//! Eigenvalues come from implicit-shift QL with a Wilkinson-type shift, and the
//! plane rotations are applied directly to the complex reduction unitary.

use num_complex::Complex64;

use crate::compensated::rayleigh_quotients;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, ComplexScalar, HermitianMatrix, ONE, ZERO};

/// Maximum QL sweeps spent on any single eigenvalue.
pub const MAX_SWEEPS: usize = 50;

/// Real symmetric tridiagonal matrix together with the unitary `Q` satisfying
/// `Q* A Q = T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub accumulated_q: CMatrix,
}

impl Tridiagonal {
    /// Tridiagonal with `Q = I`.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1), "offdiag must have length n - 1");
        let n = diag.len();
        Tridiagonal { diag, offdiag, accumulated_q: CMatrix::identity(n) }
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.order();
        let mut t = CMatrix::zeros(n, n);
        for i in 0..n {
            t[(i, i)] = Complex64::new(self.diag[i], 0.0);
        }
        for (k, &e) in self.offdiag.iter().enumerate() {
            t[(k + 1, k)] = Complex64::new(e, 0.0);
            t[(k, k + 1)] = Complex64::new(e, 0.0);
        }
        t
    }
}

/// Eigenvalues in ascending order and the unitary whose column `i` is the
/// normalized eigenvector for `eigenvalues[i]`.
///
/// Eigenvector phases are whatever the iteration produced; only the moduli of
/// the components are meaningful across runs. For repeated eigenvalues the
/// columns are an arbitrary orthonormal basis of the eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: CMatrix,
    /// Low-order corrections: the eigenvalue estimate is
    /// `eigenvalues[i] + eigenvalue_tails[i]`. Zero unless refined against
    /// the original matrix (see [`eigh`]).
    pub eigenvalue_tails: Vec<f64>,
}

impl EigenDecomposition {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Component `j` of the eigenvector for `eigenvalues[i]`.
    pub fn component(&self, i: usize, j: usize) -> ComplexScalar {
        self.vectors[(j, i)]
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(&self.eigenvalues)
    }
}

pub(crate) fn spectral_radius(lam: &[f64]) -> f64 {
    lam.iter().fold(0.0, |acc: f64, l| acc.max(l.abs()))
}

/// Reduces `a` to real symmetric tridiagonal form by a unitary similarity.
pub fn tridiagonalize(a: &HermitianMatrix) -> Tridiagonal {
    let n = a.order();
    let mut w = a.as_matrix().clone();
    let mut q = CMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<ComplexScalar> = (k + 1..n).map(|r| w[(r, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = x[0];
        let alpha_abs = alpha.norm();
        let xnorm = (alpha.norm_sqr() + tail).sqrt();
        let phase = if alpha_abs == 0.0 { ONE } else { alpha / alpha_abs };
        let beta = -phase * xnorm;

        // H = I - tau v v*, H x = beta e1.
        let mut v = x;
        v[0] = phase * (alpha_abs + xnorm);
        let vv = v[0].norm_sqr() + tail;
        let tau = 2.0 / vv;

        // Trailing block update S <- H S H written as S - v q* - q v*.
        let mut p = vec![ZERO; m];
        for (r, pr) in p.iter_mut().enumerate() {
            let row = w.row(k + 1 + r);
            *pr = row[k + 1..].iter().zip(&v).map(|(s, vt)| s * vt).sum::<ComplexScalar>() * tau;
        }
        let kappa = 0.5 * tau * v.iter().zip(&p).map(|(vt, pt)| vt.conj() * pt).sum::<ComplexScalar>().re;
        let qv: Vec<ComplexScalar> = p.iter().zip(&v).map(|(pt, vt)| pt - vt * kappa).collect();
        for r in 0..m {
            for c in 0..m {
                let upd = v[r] * qv[c].conj() + qv[r] * v[c].conj();
                w[(k + 1 + r, k + 1 + c)] -= upd;
            }
        }
        w[(k + 1, k)] = beta;
        w[(k, k + 1)] = beta.conj();
        for r in k + 2..n {
            w[(r, k)] = ZERO;
            w[(k, r)] = ZERO;
        }

        // Q <- Q H on columns k+1..n.
        for r in 0..n {
            let s: ComplexScalar = (0..m).map(|t| q[(r, k + 1 + t)] * v[t]).sum::<ComplexScalar>() * tau;
            for t in 0..m {
                q[(r, k + 1 + t)] -= s * v[t].conj();
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut phase = ONE;
    for k in 0..n.saturating_sub(1) {
        let e = w[(k + 1, k)];
        let mag = e.norm();
        if mag > 0.0 {
            phase *= e / mag;
            // Renormalize so repeated products stay on the unit circle.
            phase /= phase.norm();
        }
        offdiag.push(mag);
        if phase != ONE {
            for r in 0..n {
                q[(r, k + 1)] *= phase;
            }
        }
    }

    Tridiagonal { diag, offdiag, accumulated_q: q }
}

/// Implicit QL on (d, e). `e[k]` couples `d[k]` and `d[k+1]`; `e` has length
/// `n` with a trailing zero. Rotations are applied to columns of `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut CMatrix>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence { index: l + 1, minor: None });
            }

            // Shift from the eigenvalue of the leading 2x2 block nearest d[l].
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[(k, i)];
                        let zn = z[(k, i + 1)];
                        z[(k, i + 1)] = zi * s + zn * c;
                        z[(k, i)] = zi * c - zn * s;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn padded_offdiag(t: &Tridiagonal) -> Vec<f64> {
    let mut e = t.offdiag.clone();
    e.push(0.0);
    e
}

fn ascending_order(d: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    order
}

/// Eigenvalues and eigenvectors of the tridiagonal; vectors are expressed in
/// the original basis through `accumulated_q`.
pub fn tridiag_eigen(t: Tridiagonal) -> Result<EigenDecomposition> {
    let mut d = t.diag.clone();
    let mut e = padded_offdiag(&t);
    let mut z = t.accumulated_q;
    ql_implicit(&mut d, &mut e, Some(&mut z))?;
    let order = ascending_order(&d);
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&k| d[k]).collect(),
        vectors: z.permute_columns(&order),
        eigenvalue_tails: vec![0.0; order.len()],
    })
}

/// Eigenvalues only; no rotation accumulation.
pub fn tridiag_eigenvalues(t: &Tridiagonal) -> Result<Vec<f64>> {
    let mut d = t.diag.clone();
    let mut e = padded_offdiag(t);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are refined by compensated Rayleigh quotients against `a`, so
/// differences between nearly equal eigenvalues of related matrices keep
/// their significant digits. Refinement is dropped if it would break the
/// ascending order.
pub fn eigh(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let mut d = tridiag_eigen(tridiagonalize(a))?;
    let refined = rayleigh_quotients(a, &d.vectors);
    if refined.windows(2).all(|w| w[0].0 <= w[1].0) {
        (d.eigenvalues, d.eigenvalue_tails) = refined.into_iter().unzip();
    }
    Ok(d)
}

/// Ascending eigenvalues of a Hermitian matrix, without refinement.
pub fn spectrum(a: &HermitianMatrix) -> Result<Vec<f64>> {
    tridiag_eigenvalues(&tridiagonalize(a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// max over i of the 2-norm of `A v_i - lambda_i v_i`.
    pub max_residual: f64,
    /// max entry of `|V* V - I|`.
    pub orthonormality_defect: f64,
    pub ascending: bool,
}

/// Measures how well `decomp` satisfies the eigendecomposition invariants for
/// `a`. Mismatched orders report infinite defects.
pub fn residual_report(a: &HermitianMatrix, decomp: &EigenDecomposition) -> ResidualReport {
    let n = a.order();
    let ascending = decomp.eigenvalues.windows(2).all(|w| w[0] <= w[1]);
    if decomp.order() != n || decomp.vectors.nrows() != n || decomp.vectors.ncols() != n {
        return ResidualReport { max_residual: f64::INFINITY, orthonormality_defect: f64::INFINITY, ascending };
    }
    let av = a.as_matrix() * &decomp.vectors;
    let mut max_residual: f64 = 0.0;
    for (i, &lambda) in decomp.eigenvalues.iter().enumerate() {
        let norm = (0..n)
            .map(|r| (av[(r, i)] - decomp.vectors[(r, i)] * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(norm);
    }
    ResidualReport { max_residual, orthonormality_defect: decomp.vectors.unitarity_defect(), ascending }
}
