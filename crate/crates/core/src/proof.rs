//! Numerical checks for the block-matrix argument behind the corner case of
//! the eigenvector–eigenvalue identity.
//!
//! With `A` shifted so that one eigenvalue is zero and its eigenvector placed
//! last in the unitary `U`, write
//!
//! ```text
//! A = [ M_n  B    ]      U = [ U_n  C1   ]
//!     [ B*   a_nn ]          [ C2   u_nn ]
//! ```
//!
//! Then `M_n = U_n L_n U_n*`, unitarity gives `U_n U_n* + C1 C1* = I`, and
//! `det(I - C1 C1*) = 1 - C1* C1 = |u_nn|^2`, so
//! `det(M_n) = det(L_n) |u_nn|^2`. Each link is measured independently here.

use num_complex::Complex64;

use crate::eigen::{eigh, spectral_radius, EigenDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{corner_partition, BlockPartition, CMatrix, ComplexScalar, HermitianMatrix, ONE, ZERO};

/// Eigenvalues within `KERNEL_TOLERANCE * (1 + max|lambda|)` of each other (or
/// of zero) are treated as equal.
pub const KERNEL_TOLERANCE: f64 = 1e-8;
/// Pivots smaller than this make [`determinant`] return zero.
pub const PIVOT_UNDERFLOW: f64 = 1e-300;

/// Tolerances for the proof steps. `block` and `unitary` are per unit of
/// matrix order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofTolerances {
    pub determinant: f64,
    pub block: f64,
    pub unitary: f64,
}

impl Default for ProofTolerances {
    fn default() -> Self {
        ProofTolerances { determinant: 1e-8, block: 1e-9, unitary: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofStep {
    pub name: &'static str,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Intermediate quantities worth reporting, in a fixed order.
    pub values: Vec<(&'static str, f64)>,
}

impl ProofStep {
    fn new(name: &'static str, defect: f64, tolerance: f64, values: Vec<(&'static str, f64)>) -> Self {
        ProofStep { name, defect, tolerance, pass: defect <= tolerance, values }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofTrace {
    /// 0-based index of the targeted eigenvalue in ascending order.
    pub eigen_index: usize,
    /// The eigenvalue subtracted from the diagonal.
    pub shift: f64,
    pub steps: Vec<ProofStep>,
    pub pass: bool,
}

impl ProofTrace {
    pub fn step(&self, name: &str) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &CMatrix) -> Result<ComplexScalar> {
    if !m.is_square() {
        return Err(Error::BadShape { expected: m.nrows(), row: 1, found: m.ncols() });
    }
    let n = m.nrows();
    let mut a = m.clone().into_data();
    let mut det = ONE;
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs < PIVOT_UNDERFLOW {
            return Ok(ZERO);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det *= pivot;
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == ZERO {
                continue;
            }
            for k in col + 1..n {
                let sub = factor * a[col * n + k];
                a[r * n + k] -= sub;
            }
        }
    }
    Ok(det)
}

fn kernel_threshold(lam: &[f64]) -> f64 {
    KERNEL_TOLERANCE * (1.0 + spectral_radius(lam))
}

/// `A - lambda_i I` for the `i`-th smallest eigenvalue.
pub fn reduce_to_zero(a: &HermitianMatrix, i: usize) -> Result<HermitianMatrix> {
    let lam = eigh(a)?.eigenvalues;
    let target = *lam.get(i).ok_or(Error::IndexOutOfRange { index: i + 1, order: lam.len() })?;
    Ok(a.shift(target))
}

/// Eigenbasis with the (simple) zero eigenpair moved to the last position.
struct CornerBasis {
    u: CMatrix,
    /// The remaining eigenvalues in their original order.
    nonzero: Vec<f64>,
}

fn corner_basis(decomp: &EigenDecomposition) -> Result<CornerBasis> {
    let lam = &decomp.eigenvalues;
    let n = lam.len();
    if n < 2 {
        return Err(Error::TooSmall { order: n });
    }
    let threshold = kernel_threshold(lam);
    let (p, closest) = lam
        .iter()
        .enumerate()
        .map(|(k, &l)| (k, l.abs()))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    if closest > threshold {
        return Err(Error::NotShifted { closest, tolerance: threshold });
    }
    let multiplicity = lam.iter().filter(|l| l.abs() <= threshold).count();
    if multiplicity > 1 {
        return Err(Error::DegenerateKernel { eigenvalue: lam[p], multiplicity, tolerance: threshold });
    }
    let perm: Vec<usize> = (0..n).filter(|&k| k != p).chain(std::iter::once(p)).collect();
    Ok(CornerBasis {
        u: decomp.vectors.permute_columns(&perm),
        nonzero: perm[..n - 1].iter().map(|&k| lam[k]).collect(),
    })
}

fn corner_identity_with(a: &HermitianMatrix, basis: &CornerBasis, tol: f64) -> Result<ProofStep> {
    let n = a.order();
    let minor_det = determinant(a.principal_minor(n - 1)?.as_matrix())?;
    let lambda_det: f64 = basis.nonzero.iter().product();
    let u_nn_sq = basis.u[(n - 1, n - 1)].norm_sqr();
    let rhs = lambda_det * u_nn_sq;
    let defect = (minor_det - rhs).norm() / (1.0 + minor_det.norm() + rhs.abs());
    Ok(ProofStep::new(
        "corner_identity",
        defect,
        tol,
        vec![("det_minor", minor_det.re), ("det_lambda", lambda_det), ("u_nn_sq", u_nn_sq)],
    ))
}

/// `det(M_n) = det(L_n) |u_nn|^2` for `A` with a simple zero eigenvalue.
pub fn corner_identity(a: &HermitianMatrix, tol: f64) -> Result<ProofStep> {
    let basis = corner_basis(&eigh(a)?)?;
    corner_identity_with(a, &basis, tol)
}

/// `X diag(d) Y*` for `X` of size r×m, `Y` of size c×m.
fn scaled_product(x: &CMatrix, d: &[f64], y: &CMatrix) -> CMatrix {
    let mut xd = x.clone();
    for i in 0..xd.nrows() {
        for (k, &dk) in d.iter().enumerate() {
            xd[(i, k)] *= dk;
        }
    }
    &xd * &y.adjoint()
}

fn row_matrix(v: &[ComplexScalar]) -> CMatrix {
    CMatrix::from_fn(1, v.len(), |_, k| v[k])
}

fn block_factor_with(a: &HermitianMatrix, basis: &CornerBasis, tol: f64) -> Result<ProofStep> {
    let n = a.order();
    let ublocks = corner_partition(&basis.u)?;
    let ablocks = a.corner_partition()?;
    let c2 = row_matrix(&ublocks.bottom_left_row);
    let lam = &basis.nonzero;

    let minor = scaled_product(&ublocks.top_left, lam, &ublocks.top_left);
    let minor_defect = minor.max_abs_diff(&ablocks.top_left);

    let b = scaled_product(&ublocks.top_left, lam, &c2);
    let b_defect = (0..n - 1).map(|r| (b[(r, 0)] - ablocks.top_right_col[r]).norm()).fold(0.0, f64::max);

    let corner = scaled_product(&c2, lam, &c2)[(0, 0)];
    let corner_defect = (corner - ablocks.corner).norm();

    let scale = 1.0 + a.max_abs();
    let defect = minor_defect.max(b_defect).max(corner_defect) / scale;
    Ok(ProofStep::new(
        "block_factor",
        defect,
        tol,
        vec![
            ("minor_defect", minor_defect / scale),
            ("column_defect", b_defect / scale),
            ("corner_defect", corner_defect / scale),
        ],
    ))
}

/// Checks `M_n = U_n L_n U_n*`, `B = U_n L_n C2*` and `a_nn = C2 L_n C2*`.
/// Defects are relative to `1 + max|a_ij|`.
pub fn block_factor_check(a: &HermitianMatrix, tol: f64) -> Result<ProofStep> {
    let basis = corner_basis(&eigh(a)?)?;
    block_factor_with(a, &basis, tol)
}

fn inner(x: &[ComplexScalar], y: &[ComplexScalar]) -> ComplexScalar {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Block form of `U U* = I`:
/// (a) `U_n U_n* + C1 C1* = I`, (b) `C1* C1 + |u_nn|^2 = 1`,
/// (c) `U_n C2* + C1 conj(u_nn) = 0`.
pub fn unitarity_block_check(u: &CMatrix, tol: f64) -> Result<ProofStep> {
    let BlockPartition { top_left, top_right_col: c1, bottom_left_row: c2, corner: u_nn } = corner_partition(u)?;
    let n = u.nrows();
    let defect = u.unitarity_defect().max((u * &u.adjoint()).max_abs_diff(&CMatrix::identity(n)));
    let limit = 1e-10 * n as f64;
    if !(defect <= limit) {
        return Err(Error::NotUnitary { defect, tolerance: limit });
    }
    let m = n - 1;

    let gram = &top_left * &top_left.adjoint();
    let a = CMatrix::from_fn(m, m, |i, j| gram[(i, j)] + c1[i] * c1[j].conj()).max_abs_diff(&CMatrix::identity(m));

    let b = (inner(&c1, &c1) + u_nn.norm_sqr() - ONE).norm();

    let c = (0..m)
        .map(|i| (inner(&c2, top_left.row(i)) + c1[i] * u_nn.conj()).norm())
        .fold(0.0, f64::max);

    Ok(ProofStep::new(
        "unitarity_blocks",
        a.max(b).max(c),
        tol,
        vec![("leading_block", a), ("last_column_norm", b), ("off_diagonal_block", c)],
    ))
}

/// `det(I - c c*) = 1 - c* c`, measured as an absolute difference.
pub fn rank_one_determinant_defect(c: &[ComplexScalar]) -> Result<f64> {
    let m = c.len();
    let update = CMatrix::from_fn(m, m, |i, j| if i == j { ONE } else { ZERO } - c[i] * c[j].conj());
    let det = determinant(&update)?;
    Ok((det - (ONE - inner(c, c))).norm())
}

/// Three-way agreement of `det(I - C1 C1*)`, `1 - C1* C1` and `|u_nn|^2`.
pub fn sylvester_check(c1: &[ComplexScalar], u_nn: ComplexScalar, tol: f64) -> Result<ProofStep> {
    let norm_sq = inner(c1, c1).re;
    let premise = (norm_sq + u_nn.norm_sqr() - 1.0).abs();
    if !(premise <= tol) {
        return Err(Error::NormalizationViolated { defect: premise });
    }
    let m = c1.len();
    let update = CMatrix::from_fn(m, m, |i, j| if i == j { ONE } else { ZERO } - c1[i] * c1[j].conj());
    let det = determinant(&update)?;
    let scalar = Complex64::new(1.0 - norm_sq, 0.0);
    let mag = Complex64::new(u_nn.norm_sqr(), 0.0);
    let defect = (det - scalar).norm().max((det - mag).norm()).max((scalar - mag).norm());
    Ok(ProofStep::new(
        "sylvester_swap",
        defect,
        tol,
        vec![("det_update", det.re), ("one_minus_norm", scalar.re), ("u_nn_sq", mag.re)],
    ))
}

/// Runs the whole chain for the `i`-th smallest eigenvalue with the last
/// coordinate as the corner.
pub fn full_proof_trace(a: &HermitianMatrix, i: usize, tols: &ProofTolerances) -> Result<ProofTrace> {
    let n = a.order();
    if n < 2 {
        return Err(Error::TooSmall { order: n });
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, order: n });
    }
    let lam = eigh(a)?.eigenvalues;
    let target = lam[i];
    let threshold = kernel_threshold(&lam);
    let multiplicity = lam.iter().filter(|l| (*l - target).abs() <= threshold).count();
    if multiplicity > 1 {
        return Err(Error::DegenerateKernel { eigenvalue: target, multiplicity, tolerance: threshold });
    }

    let shifted = a.shift(target);
    let basis = corner_basis(&eigh(&shifted)?)?;
    let scale = n as f64;
    let u = corner_partition(&basis.u)?;

    let steps = vec![
        corner_identity_with(&shifted, &basis, tols.determinant)?,
        block_factor_with(&shifted, &basis, tols.block * scale)?,
        unitarity_block_check(&basis.u, tols.unitary * scale)?,
        sylvester_check(&u.top_right_col, u.corner, tols.unitary * scale)?,
    ];
    let pass = steps.iter().all(|s| s.pass);
    Ok(ProofTrace { eigen_index: i, shift: target, steps, pass })
}

/// Permutation moving coordinate `j` to the last position, keeping the
/// others in order.
pub fn move_to_last(n: usize, j: usize) -> Vec<usize> {
    (0..n).filter(|&k| k != j).chain(std::iter::once(j)).collect()
}

/// As [`full_proof_trace`] with coordinate `j` moved into the corner by a
/// symmetric permutation first.
pub fn full_proof_trace_at(a: &HermitianMatrix, i: usize, j: usize, tols: &ProofTolerances) -> Result<ProofTrace> {
    let n = a.order();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j + 1, order: n });
    }
    full_proof_trace(&a.permute(&move_to_last(n, j)), i, tols)
}
