use std::fs;
use std::path::Path;
use std::time::Instant;

use eigenid::identity::{gap_analysis, verify_with, MagnitudeMatrix};
use eigenid::io::parse_matrix;
use eigenid::{
    eigh, full_proof_trace, minor_spectra, random_hermitian, reconstruct_magnitudes, spectrum, Ensemble,
    HermitianMatrix, ProofTolerances,
};

use clap::ValueEnum;

use crate::args::{BenchArgs, EnsembleArg, GenArgs, ProveArgs, ReconstructArgs, VerifyArgs};
use crate::report::{Field, Outcome, RunReport, Table};

#[derive(Debug)]
pub enum CmdError {
    Io { path: String, message: String },
    Usage(String),
    Lib(eigenid::Error),
}

impl CmdError {
    pub fn kind(&self) -> &'static str {
        match self {
            CmdError::Io { .. } => "Io",
            CmdError::Usage(_) => "Usage",
            CmdError::Lib(e) => e.kind(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            CmdError::Lib(e) if !e.is_input_error() => Outcome::Fail,
            _ => Outcome::Error,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CmdError::Io { path, message } => format!("{path}: {message}"),
            CmdError::Usage(m) => m.clone(),
            CmdError::Lib(e) => e.to_string(),
        }
    }
}

impl From<eigenid::Error> for CmdError {
    fn from(e: eigenid::Error) -> Self {
        CmdError::Lib(e)
    }
}

type CmdResult = Result<(), CmdError>;

/// Runs `body` and folds any error into the report.
fn run(mut report: RunReport, body: impl FnOnce(&mut RunReport) -> CmdResult) -> RunReport {
    if let Err(e) = body(&mut report) {
        report.outcome = e.outcome();
        report.error = Some((e.kind().to_string(), e.message()));
    }
    report
}

fn load(path: &Path) -> Result<HermitianMatrix, CmdError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CmdError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok(parse_matrix(&text)?)
}

fn outcome(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn verify(args: &VerifyArgs) -> RunReport {
    let mut report = RunReport::new("verify");
    report.input("file", args.input.display().to_string()).tolerance("tol", args.tol);
    run(report, |r| {
        let a = load(&args.input)?;
        let decomp = eigh(&a)?;
        let minors = minor_spectra(&a)?;
        let result = verify_with(&decomp, &minors, args.tol)?;
        let worst = result.worst_cell();
        r.outcome = outcome(result.pass);
        r.field("order", result.order)
            .field("max_normalized_gap", result.max_normalized_gap)
            .field("worst.i", worst.i + 1)
            .field("worst.j", worst.j + 1)
            .field("worst.lhs", worst.lhs)
            .field("worst.rhs", worst.rhs)
            .field("worst.normalized_gap", worst.normalized_gap);
        r.table(Table {
            name: "cells",
            columns: columns(&["i", "j", "lhs", "rhs", "abs_gap", "normalized_gap"]),
            rows: result
                .cells
                .iter()
                .map(|c| {
                    vec![
                        (c.i + 1).into(),
                        (c.j + 1).into(),
                        c.lhs.into(),
                        c.rhs.into(),
                        c.abs_gap.into(),
                        c.normalized_gap.into(),
                    ]
                })
                .collect(),
        });
        Ok(())
    })
}

pub fn reconstruct(args: &ReconstructArgs) -> RunReport {
    let mut report = RunReport::new("reconstruct");
    report
        .input("file", args.input.display().to_string())
        .tolerance("gap_tol", args.gap_tol)
        .tolerance("tol", args.tol);
    run(report, |r| {
        let a = load(&args.input)?;
        let lam = spectrum(&a)?;
        let gaps = gap_analysis(&lam, args.gap_tol)?;
        r.field("order", a.order())
            .field("min_gap", gaps.min_gap)
            .field("gap_threshold", gaps.threshold(args.gap_tol));
        let minors = minor_spectra(&a)?;
        let rebuilt = reconstruct_magnitudes(&lam, &minors, args.gap_tol)?;
        let direct = MagnitudeMatrix::from_eigenvectors(&eigh(&a)?);
        let deviation = rebuilt.max_deviation(&direct);
        r.outcome = outcome(deviation <= args.tol);
        r.field("max_deviation", deviation).field("stochastic_defect", rebuilt.stochastic_defect());
        let n = a.order();
        r.table(Table {
            name: "magnitudes",
            columns: columns(&["i", "j", "reconstructed", "direct"]),
            rows: (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| vec![(i + 1).into(), (j + 1).into(), rebuilt.get(i, j).into(), direct.get(i, j).into()])
                .collect(),
        });
        Ok(())
    })
}

pub fn prove(args: &ProveArgs) -> RunReport {
    let mut report = RunReport::new("prove");
    let tols = ProofTolerances { determinant: args.tol, ..ProofTolerances::default() };
    report
        .input("file", args.input.display().to_string())
        .tolerance("determinant", tols.determinant)
        .tolerance("block_per_order", tols.block)
        .tolerance("unitary_per_order", tols.unitary);
    run(report, |r| {
        let a = load(&args.input)?;
        let n = a.order();
        let i = args.i.unwrap_or(n);
        if i == 0 || i > n {
            return Err(CmdError::Usage(format!("--i must be in 1..={n}, got {i}")));
        }
        let trace = full_proof_trace(&a, i - 1, &tols)?;
        r.outcome = outcome(trace.pass);
        r.field("order", n).field("i", i).field("shift", trace.shift);
        for step in &trace.steps {
            for (k, v) in &step.values {
                r.field(format!("{}.{k}", step.name), *v);
            }
        }
        r.table(Table {
            name: "steps",
            columns: columns(&["step", "defect", "tolerance", "pass"]),
            rows: trace
                .steps
                .iter()
                .map(|s| vec![s.name.into(), s.defect.into(), s.tolerance.into(), s.pass.into()])
                .collect(),
        });
        Ok(())
    })
}

/// Builds the matrix file text for `gen`.
pub fn gen(args: &GenArgs) -> Result<String, CmdError> {
    let ensemble = match (args.ensemble, &args.spectrum) {
        (None | Some(EnsembleArg::Prescribed), Some(s)) => Ensemble::PrescribedSpectrum(s.clone()),
        (Some(EnsembleArg::Prescribed), None) => {
            return Err(CmdError::Usage("--ensemble prescribed requires --spectrum".into()))
        }
        (Some(other), Some(_)) => {
            return Err(CmdError::Usage(format!("--spectrum conflicts with --ensemble {}", other.to_possible_value().unwrap().get_name())));
        }
        (None | Some(EnsembleArg::RealSymmetric), None) => Ensemble::RealSymmetric,
        (Some(EnsembleArg::ComplexHermitian), None) => Ensemble::ComplexHermitian,
    };
    let a = random_hermitian(args.n, args.seed, &ensemble)?;
    Ok(eigenid::io::format_matrix(&a))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

pub fn bench(args: &BenchArgs) -> RunReport {
    let mut report = RunReport::new("bench");
    let sizes: Vec<String> = args.sizes.iter().map(usize::to_string).collect();
    report
        .input("sizes", sizes.join(","))
        .input("seed", args.seed)
        .input("reps", args.reps)
        .tolerance("tol", args.tol)
        .tolerance("gap_tol", args.gap_tol);
    run(report, |r| {
        if let Some(&bad) = args.sizes.iter().find(|&&n| n < 2) {
            return Err(CmdError::Usage(format!("bench sizes must be >= 2, got {bad}")));
        }
        if args.reps == 0 {
            return Err(CmdError::Usage("--reps must be positive".into()));
        }
        let mut rows = Vec::new();
        let mut pass = true;
        for &n in &args.sizes {
            let a = random_hermitian(n, args.seed.wrapping_add(n as u64), &Ensemble::ComplexHermitian)?;
            let mut via_minors = Vec::with_capacity(args.reps);
            let mut direct = Vec::with_capacity(args.reps);
            let mut deviation = 0.0;
            for _ in 0..args.reps {
                let start = Instant::now();
                let lam = spectrum(&a)?;
                let minors = minor_spectra(&a)?;
                let rebuilt = reconstruct_magnitudes(&lam, &minors, args.gap_tol)?;
                via_minors.push(start.elapsed().as_secs_f64() * 1e3);

                let start = Instant::now();
                let mags = MagnitudeMatrix::from_eigenvectors(&eigh(&a)?);
                direct.push(start.elapsed().as_secs_f64() * 1e3);
                deviation = rebuilt.max_deviation(&mags);
            }
            pass &= deviation <= args.tol;
            rows.push(vec![
                Field::from(n),
                median(via_minors).into(),
                median(direct).into(),
                deviation.into(),
            ]);
        }
        r.outcome = outcome(pass);
        r.table(Table {
            name: "timings",
            columns: columns(&["n", "minors_ms", "eigh_ms", "max_deviation"]),
            rows,
        });
        Ok(())
    })
}
