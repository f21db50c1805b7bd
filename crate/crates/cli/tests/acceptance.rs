//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use eigenid::identity::{identity_sides, product_scale, MagnitudeMatrix};
use eigenid::proof::rank_one_determinant_defect;
use eigenid::{
    eigh, full_proof_trace, interlacing_check, minor_spectra, random_hermitian, random_unitary, reconstruct_magnitudes,
    residual_report, tridiag_eigenvalues, verify_identity, Ensemble, Error, HermitianMatrix, Tridiagonal,
};

const IDENTITY_TOL: f64 = 1e-8;
const GAP_TOL: f64 = 1e-8;
const RECONSTRUCTION_TOL: f64 = 1e-8;
const STOCHASTIC_TOL_PER_ORDER: f64 = 1e-8;
const CORNER_TOL: f64 = 1e-8;
const SYLVESTER_TOL_PER_ORDER: f64 = 1e-10;
const DEGENERATE_SIDE_TOL: f64 = 1e-8;
const SOLVER_TOL_PER_ORDER: f64 = 1e-11;
const INTERLACING_SLACK: f64 = 1e-10;
const PIN_TOL: f64 = 1e-12;
const SUITE_SECONDS: f64 = 30.0;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Order for the k-th matrix of the identity suite; cycles through 2..=32.
fn suite_order(k: usize) -> usize {
    2 + (k * 13) % 31
}

fn identity_suite() -> Vec<(String, HermitianMatrix)> {
    let mut out = Vec::new();
    for k in 0..100 {
        let n = suite_order(k);
        let seed = 1000 + k as u64;
        out.push((format!("real n={n} seed={seed}"), random_hermitian(n, seed, &Ensemble::RealSymmetric).unwrap()));
    }
    for k in 0..100 {
        let n = suite_order(k + 7);
        let seed = 2000 + k as u64;
        out.push((format!("complex n={n} seed={seed}"), random_hermitian(n, seed, &Ensemble::ComplexHermitian).unwrap()));
    }
    out
}

/// Ascending spectrum with every gap in [0.1, 0.6).
fn separated_spectrum(n: usize, k: usize) -> Vec<f64> {
    let mut lam = Vec::with_capacity(n);
    let mut x = -(n as f64) / 4.0;
    for t in 0..n {
        lam.push(x);
        x += 0.1 + 0.5 * (((t * 5 + k * 3) % 7) as f64) / 7.0;
    }
    lam
}

fn separated_suite() -> Vec<(String, HermitianMatrix)> {
    (0..50)
        .map(|k| {
            let n = 2 + (k * 5) % 23;
            let seed = 3000 + k as u64;
            let a = random_hermitian(n, seed, &Ensemble::PrescribedSpectrum(separated_spectrum(n, k))).unwrap();
            (format!("prescribed n={n} seed={seed}"), a)
        })
        .collect()
}

fn proof_suite() -> Vec<(String, HermitianMatrix)> {
    (0..50)
        .map(|k| {
            let n = 2 + (k * 3) % 19;
            let seed = 4000 + k as u64;
            let ens = if k % 2 == 0 { Ensemble::ComplexHermitian } else { Ensemble::RealSymmetric };
            (format!("{ens:?} n={n} seed={seed}"), random_hermitian(n, seed, &ens).unwrap())
        })
        .collect()
}

fn degenerate_suite() -> Vec<(String, HermitianMatrix)> {
    let spectra: [&[f64]; 6] = [
        &[1.0, 1.0],
        &[1.0, 1.0, 2.0],
        &[0.0, 2.0, 2.0, 2.0, 5.0],
        &[-3.0, -1.0, -1.0, 0.5, 4.0, 4.0],
        &[2.0, 2.0, 2.0, 2.0],
        &[-1.0, 0.0, 1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0],
    ];
    spectra
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let seed = 5000 + k as u64;
            let a = random_hermitian(s.len(), seed, &Ensemble::PrescribedSpectrum(s.to_vec())).unwrap();
            (format!("degenerate {s:?} seed={seed}"), a)
        })
        .collect()
}

fn ac1_identity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (name, a) in identity_suite() {
        let report = verify_identity(&a, IDENTITY_TOL).map_err(|e| format!("{name}: {e}"))?;
        worst = worst.max(report.max_normalized_gap);
        check(report.pass, || format!("{name}: max normalized gap {:e}", report.max_normalized_gap))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < SUITE_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(format!("200 matrices, worst gap {worst:.2e} <= {IDENTITY_TOL:e}, {secs:.2}s"))
}

fn ac2_reconstruction() -> Outcome {
    let mut worst_dev: f64 = 0.0;
    let mut worst_stoch: f64 = 0.0;
    for (name, a) in separated_suite() {
        let n = a.order();
        let d = eigh(&a).map_err(|e| e.to_string())?;
        let minors = minor_spectra(&a).map_err(|e| e.to_string())?;
        let rebuilt = reconstruct_magnitudes(&d.eigenvalues, &minors, GAP_TOL).map_err(|e| format!("{name}: {e}"))?;
        let dev = rebuilt.max_deviation(&MagnitudeMatrix::from_eigenvectors(&d));
        let stoch = rebuilt.stochastic_defect();
        worst_dev = worst_dev.max(dev);
        worst_stoch = worst_stoch.max(stoch / n as f64);
        check(dev <= RECONSTRUCTION_TOL, || format!("{name}: deviation {dev:e}"))?;
        check(stoch <= STOCHASTIC_TOL_PER_ORDER * n as f64, || format!("{name}: stochastic defect {stoch:e}"))?;
        check(rebuilt.min_entry() >= 0.0, || format!("{name}: negative entry"))?;
    }
    Ok(format!("50 matrices, worst deviation {worst_dev:.2e}, worst stochastic defect/n {worst_stoch:.2e}"))
}

fn ac3_proof() -> Outcome {
    let mut traces = 0;
    let mut worst: f64 = 0.0;
    for (name, a) in proof_suite() {
        for i in 0..a.order() {
            match full_proof_trace(&a, i, &Default::default()) {
                Ok(trace) => {
                    traces += 1;
                    check(trace.steps.len() == 4, || format!("{name} i={i}: {} steps", trace.steps.len()))?;
                    check(trace.pass, || format!("{name} i={i}: {:?}", trace.steps))?;
                    let corner = trace.step("corner_identity").unwrap().defect;
                    worst = worst.max(corner);
                    check(corner <= CORNER_TOL, || format!("{name} i={i}: corner defect {corner:e}"))?;
                }
                // Only simple eigenvalues are in scope.
                Err(Error::DegenerateKernel { .. }) => {}
                Err(e) => return Err(format!("{name} i={i}: {e}")),
            }
        }
    }
    Ok(format!("{traces} traces over 50 matrices, worst corner defect {worst:.2e}"))
}

fn ac4_sylvester() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let len = 1 + k % 31;
        let radius = if k % 10 == 0 { 1.0 } else { (k % 10) as f64 / 10.0 };
        let q = random_unitary(len, 6000 + k as u64);
        let col: Vec<_> = q.column(0).into_iter().map(|z| z * radius).collect();
        let defect = rank_one_determinant_defect(&col).map_err(|e| e.to_string())?;
        worst = worst.max(defect / len as f64);
        check(defect <= SYLVESTER_TOL_PER_ORDER * len as f64, || format!("len={len} r={radius}: {defect:e}"))?;
    }
    Ok(format!("100 columns, worst defect/n {worst:.2e}"))
}

fn ac5_degenerate() -> Outcome {
    let mut cells = 0;
    for (name, a) in degenerate_suite() {
        let d = eigh(&a).map_err(|e| e.to_string())?;
        let lam = &d.eigenvalues;
        let minors = minor_spectra(&a).map_err(|e| e.to_string())?;
        let mags = MagnitudeMatrix::from_eigenvectors(&d);
        let scale = product_scale(lam);
        let threshold = GAP_TOL * (1.0 + (lam[lam.len() - 1] - lam[0]));
        let affected: Vec<usize> = (0..lam.len())
            .filter(|&i| (0..lam.len()).any(|k| k != i && (lam[i] - lam[k]).abs() <= threshold))
            .collect();
        check(!affected.is_empty(), || format!("{name}: no repeated eigenvalue found"))?;
        for &i in &affected {
            for j in 0..lam.len() {
                let (lhs, rhs) = identity_sides(lam, &minors, &mags, i, j).map_err(|e| e.to_string())?;
                cells += 1;
                check(lhs.abs() / scale <= DEGENERATE_SIDE_TOL && rhs.abs() / scale <= DEGENERATE_SIDE_TOL, || {
                    format!("{name} i={i} j={j}: lhs {lhs:e} rhs {rhs:e} scale {scale:e}")
                })?;
            }
        }
        match reconstruct_magnitudes(lam, &minors, GAP_TOL) {
            Err(Error::DegenerateSpectrum { .. }) => {}
            other => return Err(format!("{name}: expected DegenerateSpectrum, got {other:?}")),
        }
    }
    Ok(format!("6 matrices, {cells} affected cells vanish, reconstruction refused"))
}

fn ac6_solver() -> Outcome {
    let mut matrices = 0;
    let mut worst_res: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let suites = [identity_suite(), separated_suite(), proof_suite(), degenerate_suite()];
    for (name, a) in suites.iter().flatten() {
        matrices += 1;
        let n = a.order() as f64;
        let d = eigh(a).map_err(|e| e.to_string())?;
        let r = residual_report(a, &d);
        let bound = SOLVER_TOL_PER_ORDER * n * (1.0 + d.spectral_radius());
        worst_res = worst_res.max(r.max_residual / bound);
        worst_orth = worst_orth.max(r.orthonormality_defect / bound);
        check(r.ascending, || format!("{name}: eigenvalues not ascending"))?;
        check(r.max_residual <= bound, || format!("{name}: residual {:e} > {bound:e}", r.max_residual))?;
        check(r.orthonormality_defect <= bound, || format!("{name}: orthonormality {:e}", r.orthonormality_defect))?;
        let minors = minor_spectra(a).map_err(|e| e.to_string())?;
        for (j, minor) in minors.spectra.iter().enumerate() {
            let il = interlacing_check(&d.eigenvalues, minor, INTERLACING_SLACK).map_err(|e| e.to_string())?;
            check(il.pass, || format!("{name}: interlacing fails for j={j} at k={:?}", il.first_violation))?;
        }
    }
    Ok(format!("{matrices} matrices; residual/bound {worst_res:.2e}, orthonormality/bound {worst_orth:.2e}"))
}

fn ac7_pins() -> Outcome {
    let a = HermitianMatrix::from_diagonal(&[1.0, 2.0, 3.0]);
    let d = eigh(&a).map_err(|e| e.to_string())?;
    let minors = minor_spectra(&a).map_err(|e| e.to_string())?;
    let sides = identity_sides(&d.eigenvalues, &minors, &MagnitudeMatrix::from_eigenvectors(&d), 0, 0)
        .map_err(|e| e.to_string())?;
    check(sides == (2.0, 2.0), || format!("diag(1,2,3) sides {sides:?}"))?;

    let x = HermitianMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    let d = eigh(&x).map_err(|e| e.to_string())?;
    let minors = minor_spectra(&x).map_err(|e| e.to_string())?;
    let rebuilt = reconstruct_magnitudes(&d.eigenvalues, &minors, GAP_TOL).map_err(|e| e.to_string())?;
    for i in 0..2 {
        for j in 0..2 {
            let v = rebuilt.get(i, j);
            check((v - 0.5).abs() <= PIN_TOL, || format!("exchange magnitude ({i},{j}) = {v}"))?;
        }
    }

    let lam = tridiag_eigenvalues(&Tridiagonal::new(vec![2.0; 3], vec![1.0; 2])).map_err(|e| e.to_string())?;
    let s = std::f64::consts::SQRT_2;
    for (got, want) in lam.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
        check((got - want).abs() <= PIN_TOL, || format!("stencil eigenvalue {got} vs {want}"))?;
    }
    Ok("diag sides (2,2), exchange magnitudes 1/2, stencil 2-sqrt2, 2, 2+sqrt2".into())
}

fn eigenid(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_eigenid")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn write_fixture(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn ac8_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pass = write_fixture(dir.path(), "pass.txt", "%%eigenid hermitian 3\n1 1 1 0\n2 2 2 0\n3 3 3 0\n");
    let degenerate = write_fixture(dir.path(), "degenerate.txt", "%%eigenid hermitian 3\n1 1 1 0\n2 2 1 0\n3 3 1 0\n");
    let malformed = write_fixture(dir.path(), "malformed.txt", "%%eigenid hermitian 2\n2 1 1 0\n2 1 1 0\n");
    let p = |path: &PathBuf| path.to_str().unwrap().to_owned();

    let expectations: [(&[&str], i32); 7] = [
        (&["verify", &p(&pass)], 0),
        (&["reconstruct", &p(&pass)], 0),
        (&["prove", &p(&pass), "--i", "3"], 0),
        (&["reconstruct", &p(&degenerate)], 1),
        (&["prove", &p(&degenerate)], 1),
        (&["verify", &p(&malformed)], 2),
        (&["verify", &dir.path().join("missing.txt").to_str().unwrap().to_owned()], 2),
    ];
    for (args, want) in expectations {
        let (code, _) = eigenid(args);
        check(code == want, || format!("eigenid {args:?} exited {code}, expected {want}"))?;
    }

    let generated = dir.path().join("gen.txt");
    let gen_args = ["gen", "--n", "12", "--seed", "42", "--ensemble", "complex-hermitian"];
    let (code, first) = eigenid(&gen_args);
    let (_, second) = eigenid(&gen_args);
    check(code == 0 && first == second, || "gen output differs between runs".into())?;
    std::fs::write(&generated, &first).unwrap();
    for json in [false, true] {
        let mut args = vec!["verify", generated.to_str().unwrap()];
        if json {
            args.push("--json");
        }
        let (c1, r1) = eigenid(&args);
        let (c2, r2) = eigenid(&args);
        check(c1 == 0 && c2 == 0, || format!("verify on generated file exited {c1}"))?;
        check(r1 == r2, || format!("verify report (json={json}) differs between runs"))?;
    }
    Ok("7 status fixtures honored; gen and verify reports byte-identical across runs".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 identity suite", ac1_identity),
        ("AC2 reconstruction vs eigenvectors", ac2_reconstruction),
        ("AC3 corner proof traces", ac3_proof),
        ("AC4 rank-one determinant identity", ac4_sylvester),
        ("AC5 degenerate spectra", ac5_degenerate),
        ("AC6 solver quality and interlacing", ac6_solver),
        ("AC7 analytic pins", ac7_pins),
        ("AC8 CLI contract", ac8_cli),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
