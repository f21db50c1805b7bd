//! Text format for Hermitian matrices.
//!
//! ```text
//! %%eigenid hermitian 2
//! 1 1 1 0
//! 2 1 0 -1
//! 2 2 2 0
//! ```
//!
//! The header names the order. Each following line is `row col re im` with
//! 1-based indices and `row >= col`; only the lower triangle is stored and the
//! upper triangle is implied by conjugation. Unlisted entries are zero. Blank
//! lines and lines starting with `%` after the header are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

pub const HEADER_TAG: &str = "%%eigenid";

/// One stored lower-triangle entry, 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FileEntry {
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFileRecord {
    pub order: usize,
    pub entries: Vec<FileEntry>,
}

impl MatrixFileRecord {
    /// Checks index range, triangle membership and uniqueness.
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::TooSmall { order: 0 });
        }
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            for idx in [e.row, e.col] {
                if idx == 0 || idx > self.order {
                    return Err(Error::IndexOutOfRange { index: idx, order: self.order });
                }
            }
            if e.row < e.col {
                return Err(Error::UpperTriangleEntry { row: e.row, col: e.col });
            }
            if !seen.insert((e.row, e.col)) {
                return Err(Error::DuplicateEntry { row: e.row, col: e.col });
            }
        }
        Ok(())
    }

    /// Entries sorted by row, then column.
    pub fn canonicalized(&self) -> MatrixFileRecord {
        let mut entries = self.entries.clone();
        entries.sort_by_key(|e| (e.row, e.col));
        MatrixFileRecord { order: self.order, entries }
    }

    pub fn parse(text: &str) -> Result<MatrixFileRecord> {
        let mut lines = text.lines().enumerate();
        let order = loop {
            let Some((ln, line)) = lines.next() else {
                return Err(Error::Parse { line: 1, message: "missing header".into() });
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            break parse_header(line, ln + 1)?;
        };

        let mut entries = Vec::new();
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            entries.push(parse_entry(line, ln + 1)?);
        }
        Ok(MatrixFileRecord { order, entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER_TAG} hermitian {}\n", self.order);
        for e in &self.entries {
            // `{:e}` prints the shortest representation that parses back exactly.
            writeln!(out, "{} {} {:e} {:e}", e.row, e.col, e.re, e.im).unwrap();
        }
        out
    }
}

fn parse_header(line: &str, ln: usize) -> Result<usize> {
    let bad = |message: &str| Error::Parse { line: ln, message: message.into() };
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(HEADER_TAG) {
        return Err(bad("header must start with %%eigenid"));
    }
    if tokens.next() != Some("hermitian") {
        return Err(bad("expected `hermitian` after %%eigenid"));
    }
    let order = tokens
        .next()
        .ok_or_else(|| bad("missing order"))?
        .parse::<usize>()
        .map_err(|e| bad(&format!("invalid order: {e}")))?;
    if tokens.next().is_some() {
        return Err(bad("trailing tokens after order"));
    }
    Ok(order)
}

fn parse_entry(line: &str, ln: usize) -> Result<FileEntry> {
    let bad = |message: String| Error::Parse { line: ln, message };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(bad(format!("expected `row col re im`, found {} tokens", tokens.len())));
    }
    let index = |t: &str| t.parse::<usize>().map_err(|e| bad(format!("invalid index `{t}`: {e}")));
    let value = |t: &str| {
        let v = t.parse::<f64>().map_err(|e| bad(format!("invalid number `{t}`: {e}")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad(format!("non-finite value `{t}`")))
        }
    };
    Ok(FileEntry { row: index(tokens[0])?, col: index(tokens[1])?, re: value(tokens[2])?, im: value(tokens[3])? })
}

/// Builds the Hermitian matrix described by `record`.
pub fn read_matrix(record: &MatrixFileRecord) -> Result<HermitianMatrix> {
    record.validate()?;
    let n = record.order;
    let mut lower = vec![Complex64::new(0.0, 0.0); n * n];
    for e in &record.entries {
        if e.row == e.col && e.im != 0.0 {
            return Err(Error::ComplexDiagonal { index: e.row, im: e.im });
        }
        let im = if e.row == e.col { 0.0 } else { e.im };
        lower[(e.row - 1) * n + (e.col - 1)] = Complex64::new(e.re, im);
    }
    Ok(HermitianMatrix::from_lower(n, |i, j| lower[i * n + j]))
}

/// Lower-triangle record of `a`, in canonical order. Entries whose parts are
/// both `+0.0` are omitted.
pub fn write_matrix(a: &HermitianMatrix) -> MatrixFileRecord {
    let n = a.order();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            let z = a[(i, j)];
            if z.re.to_bits() == 0 && z.im.to_bits() == 0 {
                continue;
            }
            entries.push(FileEntry { row: i + 1, col: j + 1, re: z.re, im: z.im });
        }
    }
    MatrixFileRecord { order: n, entries }
}

pub fn parse_matrix(text: &str) -> Result<HermitianMatrix> {
    read_matrix(&MatrixFileRecord::parse(text)?)
}

pub fn format_matrix(a: &HermitianMatrix) -> String {
    write_matrix(a).to_text()
}
