use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Check the eigenvector-eigenvalue identity on Hermitian matrices.
///
/// Exit status: 0 when every check passes, 1 when a check fails or the input
/// is degenerate, 2 on I/O or usage errors.
#[derive(Debug, Parser)]
#[command(name = "eigenid", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as JSON instead of key-value text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report (or, for `gen`, the matrix file) here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both sides of the identity on every (i, j) cell.
    Verify(VerifyArgs),
    /// Rebuild |v_ij|^2 from the spectra of A and its principal minors.
    Reconstruct(ReconstructArgs),
    /// Run the corner-case proof steps for one eigenvalue.
    Prove(ProveArgs),
    /// Write a seeded random Hermitian matrix file.
    Gen(GenArgs),
    /// Time reconstruction from minors against direct eigendecomposition.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix file (`%%eigenid hermitian <order>` format).
    pub input: PathBuf,

    /// Maximum normalized gap |lhs-rhs|/(1+|lhs|+|rhs|) for a pass.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    pub input: PathBuf,

    /// Minimum eigenvalue gap, relative to 1 + spectral range, for reconstruction.
    #[arg(long = "gap-tol", default_value_t = 1e-8)]
    pub gap_tol: f64,

    /// Maximum entrywise deviation from the eigenvector-derived magnitudes.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ProveArgs {
    pub input: PathBuf,

    /// 1-based index of the eigenvalue (ascending) to shift to zero. Defaults to n.
    #[arg(long)]
    pub i: Option<usize>,

    /// Normalized tolerance for the determinant step. Block steps use
    /// 1e-9*n and unitary steps 1e-10*n.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    RealSymmetric,
    ComplexHermitian,
    Prescribed,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Matrix order.
    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Defaults to `prescribed` when --spectrum is given, else `real-symmetric`.
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,

    /// Comma-separated eigenvalues for the prescribed ensemble.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub spectrum: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated matrix orders (each >= 2).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Repetitions per order; medians are reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    /// Maximum allowed deviation between the two magnitude grids.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,

    #[arg(long = "gap-tol", default_value_t = 1e-8)]
    pub gap_tol: f64,
}
