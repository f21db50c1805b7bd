//! Dense Hermitian eigendecomposition and the eigenvector–eigenvalue identity.
//!
//! The crate evaluates `|v_{i,j}|^2 prod_{k != i}(lam_i - lam_k) =
//! prod_k(lam_i - mu_k(M_j))` for Hermitian `A` and its principal minors
//! `M_j`, reconstructs squared eigenvector moduli from spectra alone, and
//! checks the block-matrix steps behind the corner case numerically.
//!
//! Library indices are 0-based; the text file format is 1-based.

mod compensated;
pub mod eigen;
pub mod error;
pub mod identity;
pub mod io;
pub mod matrix;
pub mod proof;
pub mod random;

pub use eigen::{eigh, residual_report, spectrum, tridiag_eigen, tridiag_eigenvalues, tridiagonalize};
pub use eigen::{EigenDecomposition, ResidualReport, Tridiagonal};
pub use error::{Error, Result};
pub use identity::{
    gap_analysis, identity_sides, interlacing_check, minor_spectra, normalized_gap, reconstruct_magnitudes,
    verify_identity, IdentityCell, IdentityReport, MagnitudeMatrix, MinorSpectra, SpectralGapInfo,
};
pub use io::{read_matrix, write_matrix, FileEntry, MatrixFileRecord};
pub use matrix::{corner_partition, BlockPartition, CMatrix, ComplexScalar, HermitianMatrix, HermitianMode};
pub use proof::{
    block_factor_check, corner_identity, determinant, full_proof_trace, reduce_to_zero, sylvester_check,
    unitarity_block_check, ProofStep, ProofTolerances, ProofTrace,
};
pub use random::{random_hermitian, random_unitary, Ensemble};
