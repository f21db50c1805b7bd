//! Dense complex matrices, the Hermitian wrapper, principal minors and the
//! corner block partition.
//!
//! All indices in this module are 0-based. The file format and the CLI are
//! the only places that speak 1-based indices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

pub(crate) const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);
pub(crate) const ONE: ComplexScalar = Complex64::new(1.0, 0.0);

/// Relative tolerance used by [`HermitianMatrix::from_entries`] in strict mode.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Every row must have the same length.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::BadShape { expected: cols, row: r + 1, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(CMatrix { rows: rows.len(), cols, data })
    }

    /// Real matrix from row vectors; panics on ragged input. Intended for literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| {
            assert_eq!(rows[i].len(), cols, "ragged row {i}");
            Complex64::new(rows[i][j], 0.0)
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[ComplexScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|self* self - I|`; zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&CMatrix::identity(self.cols))
    }

    /// Applies the permutation `perm` to rows and columns: result[(a, b)] =
    /// self[(perm[a], perm[b])].
    pub fn permute_symmetric(&self, perm: &[usize]) -> CMatrix {
        assert_eq!(perm.len(), self.rows);
        CMatrix::from_fn(self.rows, self.cols, |a, b| self[(perm[a], perm[b])])
    }

    /// Reorders columns: result column `c` is `self` column `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> CMatrix {
        assert_eq!(perm.len(), self.cols);
        CMatrix::from_fn(self.rows, self.cols, |i, c| self[(i, perm[c])])
    }

    pub(crate) fn into_data(self) -> Vec<ComplexScalar> {
        self.data
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{z}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// How [`HermitianMatrix::from_entries`] treats an input that is not exactly
/// Hermitian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermitianMode {
    /// Reject if the asymmetry exceeds [`HERMITIAN_TOLERANCE`] relative.
    Strict,
    /// Return `(E + E*) / 2` with a real diagonal.
    Symmetrize,
}

/// A dense square matrix equal to its conjugate transpose.
///
/// The stored entries satisfy `a[(i, j)] == conj(a[(j, i)])` bit-exactly and
/// the diagonal is real; every constructor enforces this.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
}

impl HermitianMatrix {
    pub fn from_entries(grid: CMatrix, mode: HermitianMode) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::BadShape { expected: grid.nrows(), row: 1, found: grid.ncols() });
        }
        if grid.nrows() == 0 {
            return Err(Error::TooSmall { order: 0 });
        }
        let n = grid.nrows();
        if mode == HermitianMode::Strict {
            let mut asymmetry: f64 = 0.0;
            for i in 0..n {
                for j in 0..=i {
                    asymmetry = asymmetry.max((grid[(i, j)] - grid[(j, i)].conj()).norm());
                }
            }
            let tolerance = HERMITIAN_TOLERANCE * (1.0 + grid.max_abs());
            if !(asymmetry <= tolerance) {
                return Err(Error::NotHermitian { asymmetry, tolerance });
            }
        }
        Ok(Self::symmetrized(&grid))
    }

    /// Convenience: strict-mode construction from a rows literal.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self> {
        Self::from_entries(CMatrix::from_rows(rows)?, HermitianMode::Strict)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_entries(CMatrix::from_real_rows(rows), HermitianMode::Strict)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        HermitianMatrix { inner: CMatrix::from_diagonal(diag) }
    }

    /// Averages mirrored entries; for an already Hermitian grid the result is
    /// bit-identical to the input.
    fn symmetrized(grid: &CMatrix) -> Self {
        let n = grid.nrows();
        let mut inner = CMatrix::zeros(n, n);
        for i in 0..n {
            inner[(i, i)] = Complex64::new(grid[(i, i)].re, 0.0);
            for j in 0..i {
                let lower = grid[(i, j)];
                let upper = grid[(j, i)].conj();
                let avg = if lower == upper { lower } else { (lower + upper) * 0.5 };
                inner[(i, j)] = avg;
                inner[(j, i)] = avg.conj();
            }
        }
        HermitianMatrix { inner }
    }

    /// Builds from lower-triangle entries only; the upper triangle is filled by
    /// conjugation. Caller guarantees a real diagonal.
    pub(crate) fn from_lower(n: usize, lower: impl Fn(usize, usize) -> ComplexScalar) -> Self {
        let mut inner = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..i {
                let z = lower(i, j);
                inner[(i, j)] = z;
                inner[(j, i)] = z.conj();
            }
            inner[(i, i)] = Complex64::new(lower(i, i).re, 0.0);
        }
        HermitianMatrix { inner }
    }

    pub fn order(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix {
        self.inner
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        (0..self.order()).map(|i| self.inner[(i, i)].re).sum()
    }

    /// The matrix with row `j` and column `j` removed.
    pub fn principal_minor(&self, j: usize) -> Result<HermitianMatrix> {
        let n = self.order();
        if n < 2 {
            return Err(Error::TooSmall { order: n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j + 1, order: n });
        }
        let keep = |k: usize| if k < j { k } else { k + 1 };
        let inner = CMatrix::from_fn(n - 1, n - 1, |a, b| self.inner[(keep(a), keep(b))]);
        Ok(HermitianMatrix { inner })
    }

    /// `A - s I`. Off-diagonal entries are untouched.
    pub fn shift(&self, s: f64) -> HermitianMatrix {
        let mut inner = self.inner.clone();
        for i in 0..self.order() {
            inner[(i, i)].re -= s;
        }
        HermitianMatrix { inner }
    }

    /// Symmetric permutation `P A P'` with result[(a, b)] = A[(perm[a], perm[b])].
    pub fn permute(&self, perm: &[usize]) -> HermitianMatrix {
        HermitianMatrix { inner: self.inner.permute_symmetric(perm) }
    }

    pub fn corner_partition(&self) -> Result<BlockPartition> {
        corner_partition(&self.inner)
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = ComplexScalar;

    fn index(&self, idx: (usize, usize)) -> &ComplexScalar {
        &self.inner[idx]
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.inner)
    }
}

/// Split of an n×n matrix into its leading (n-1)×(n-1) block, the last
/// column and row (without the corner) and the corner entry.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    pub top_left: CMatrix,
    pub top_right_col: Vec<ComplexScalar>,
    pub bottom_left_row: Vec<ComplexScalar>,
    pub corner: ComplexScalar,
}

impl BlockPartition {
    pub fn reassemble(&self) -> CMatrix {
        let m = self.top_left.nrows();
        CMatrix::from_fn(m + 1, m + 1, |i, j| match (i == m, j == m) {
            (false, false) => self.top_left[(i, j)],
            (false, true) => self.top_right_col[i],
            (true, false) => self.bottom_left_row[j],
            (true, true) => self.corner,
        })
    }
}

/// Partitions a square grid at its last row and column.
pub fn corner_partition(m: &CMatrix) -> Result<BlockPartition> {
    if !m.is_square() {
        return Err(Error::BadShape { expected: m.nrows(), row: 1, found: m.ncols() });
    }
    let n = m.nrows();
    if n < 2 {
        return Err(Error::TooSmall { order: n });
    }
    let last = n - 1;
    Ok(BlockPartition {
        top_left: CMatrix::from_fn(last, last, |i, j| m[(i, j)]),
        top_right_col: (0..last).map(|i| m[(i, last)]).collect(),
        bottom_left_row: (0..last).map(|j| m[(last, j)]).collect(),
        corner: m[(last, last)],
    })
}
