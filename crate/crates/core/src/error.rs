use thiserror::Error;

/// Errors raised by the eigenid library.
///
/// Indices carried in error payloads are 1-based so they can be shown to
/// users unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },
    #[error("expected a square grid of order {expected}, found row {row} with {found} entries")]
    BadShape { expected: usize, row: usize, found: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("operation requires order >= 2, got {order}")]
    TooSmall { order: usize },
    #[error("prescribed spectrum has length {found}, expected {expected}")]
    BadSpectrumLength { expected: usize, found: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) lies in the upper triangle")]
    UpperTriangleEntry { row: usize, col: usize },
    #[error("diagonal entry ({index}, {index}) has nonzero imaginary part {im:e}")]
    ComplexDiagonal { index: usize, im: f64 },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("tridiagonal QL iteration did not converge for eigenvalue {index}{}", minor_suffix(.minor))]
    NoConvergence { index: usize, minor: Option<usize> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("spectrum is degenerate: minimum gap {min_gap:e} <= {threshold:e}")]
    DegenerateSpectrum { min_gap: f64, threshold: f64 },
    #[error("reconstructed magnitude at ({row}, {col}) is {value:e}, below the clamp floor")]
    NegativeMagnitude { row: usize, col: usize, value: f64 },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("spectra lengths {full} and {minor} do not interlace-compare (need n and n-1)")]
    LengthMismatch { full: usize, minor: usize },
    #[error("no eigenvalue within {tolerance:e} of zero (closest {closest:e})")]
    NotShifted { closest: f64, tolerance: f64 },
    #[error("eigenvalue {eigenvalue:e} is not simple: {multiplicity} eigenvalues within {tolerance:e}")]
    DegenerateKernel { eigenvalue: f64, multiplicity: usize, tolerance: f64 },
    #[error("matrix is not unitary: defect {defect:e} exceeds {tolerance:e}")]
    NotUnitary { defect: f64, tolerance: f64 },
    #[error("column normalization violated: |C|^2 + |u|^2 - 1 = {defect:e}")]
    NormalizationViolated { defect: f64 },
}

fn minor_suffix(minor: &Option<usize>) -> String {
    match minor {
        Some(j) => format!(" of minor M_{j}"),
        None => String::new(),
    }
}

impl Error {
    /// Stable variant name, used in CLI reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::BadShape { .. } => "BadShape",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::TooSmall { .. } => "TooSmall",
            Error::BadSpectrumLength { .. } => "BadSpectrumLength",
            Error::DuplicateEntry { .. } => "DuplicateEntry",
            Error::UpperTriangleEntry { .. } => "UpperTriangleEntry",
            Error::ComplexDiagonal { .. } => "ComplexDiagonal",
            Error::Parse { .. } => "Parse",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::NegativeMagnitude { .. } => "NegativeMagnitude",
            Error::EmptySpectrum => "EmptySpectrum",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotShifted { .. } => "NotShifted",
            Error::DegenerateKernel { .. } => "DegenerateKernel",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::NormalizationViolated { .. } => "NormalizationViolated",
        }
    }

    /// True for errors caused by malformed input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::BadShape { .. }
                | Error::IndexOutOfRange { .. }
                | Error::TooSmall { .. }
                | Error::BadSpectrumLength { .. }
                | Error::DuplicateEntry { .. }
                | Error::UpperTriangleEntry { .. }
                | Error::ComplexDiagonal { .. }
                | Error::Parse { .. }
                | Error::DimensionMismatch { .. }
                | Error::LengthMismatch { .. }
                | Error::EmptySpectrum
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
