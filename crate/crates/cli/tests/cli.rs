use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn eigenid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenid")).args(args).output().expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen", "-o", path.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = eigenid(&full);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no field {key} in\n{report}"))
}

#[test]
fn verify_random_complex_passes_with_json_report() {
    let dir = TempDir::new().unwrap();
    let m = generate(dir.path(), "m.txt", &["--n", "12", "--seed", "9", "--ensemble", "complex-hermitian"]);
    let out = eigenid(&["verify", m.to_str().unwrap(), "--json"]);
    assert_eq!(status(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report_version"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["result"]["order"], 12);
    assert_eq!(v["tables"]["cells"].as_array().unwrap().len(), 144);
    assert!(v["result"]["max_normalized_gap"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn zero_tolerance_fails_with_status_one() {
    let dir = TempDir::new().unwrap();
    let m = generate(dir.path(), "m.txt", &["--n", "10", "--seed", "4"]);
    let out = eigenid(&["verify", m.to_str().unwrap(), "--tol", "0"]);
    assert_eq!(status(&out), 1);
    assert_eq!(field(&stdout(&out), "outcome"), "fail");
}

#[test]
fn prove_selected_eigenvalue() {
    let dir = TempDir::new().unwrap();
    let m = generate(dir.path(), "m.txt", &["--n", "8", "--seed", "2", "--ensemble", "complex-hermitian"]);
    let out = eigenid(&["prove", m.to_str().unwrap(), "--i", "5"]);
    assert_eq!(status(&out), 0);
    let report = stdout(&out);
    assert_eq!(field(&report, "i"), "5");
    for step in ["corner_identity", "block_factor", "unitarity_blocks", "sylvester_swap"] {
        assert!(report.lines().any(|l| l.starts_with(step) && l.ends_with("true")), "{step} missing:\n{report}");
    }
    let out = eigenid(&["prove", m.to_str().unwrap(), "--i", "9"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn prove_and_verify_agree_on_the_corner_cell() {
    let dir = TempDir::new().unwrap();
    // Spectrum contains 0 as its largest eigenvalue, so the corner cell is (n, n).
    let m = generate(dir.path(), "m.txt", &["--n", "5", "--seed", "3", "--spectrum", "-4,-2.5,-1,-0.5,0"]);
    let proof = stdout(&eigenid(&["prove", m.to_str().unwrap(), "--json"]));
    let verify = stdout(&eigenid(&["verify", m.to_str().unwrap(), "--json"]));
    let proof: serde_json::Value = serde_json::from_str(&proof).unwrap();
    let verify: serde_json::Value = serde_json::from_str(&verify).unwrap();
    let det_minor = proof["result"]["corner_identity.det_minor"].as_f64().unwrap();
    let cell = &verify["tables"]["cells"][24];
    assert_eq!((cell["i"].as_i64(), cell["j"].as_i64()), (Some(5), Some(5)));
    // det(M_n - 0) = prod mu_k = (-1)^(n-1) * rhs with n = 5.
    let rhs = cell["rhs"].as_f64().unwrap();
    assert!((det_minor - rhs).abs() / (1.0 + det_minor.abs() + rhs.abs()) <= 1e-10);
}

#[test]
fn reconstruct_statuses() {
    let dir = TempDir::new().unwrap();
    let m = generate(dir.path(), "m.txt", &["--n", "6", "--seed", "1", "--spectrum", "1,2,3,4,5,6"]);
    let out = eigenid(&["reconstruct", m.to_str().unwrap()]);
    assert_eq!(status(&out), 0);
    assert!(field(&stdout(&out), "max_deviation").parse::<f64>().unwrap() <= 1e-8);

    let identity = dir.path().join("identity.txt");
    std::fs::write(&identity, "%%eigenid hermitian 3\n1 1 1 0\n2 2 1 0\n3 3 1 0\n").unwrap();
    let out = eigenid(&["reconstruct", identity.to_str().unwrap()]);
    assert_eq!(status(&out), 1);
    assert_eq!(field(&stdout(&out), "error.kind"), "DegenerateSpectrum");
}

#[test]
fn malformed_and_missing_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "%%eigenid hermitian 2\n1 2 1 0\n").unwrap();
    let out = eigenid(&["verify", bad.to_str().unwrap()]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("UpperTriangleEntry"));

    let out = eigenid(&["verify", dir.path().join("nope.txt").to_str().unwrap()]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error[Io]"));
}

#[test]
fn gen_is_deterministic_and_checks_flags() {
    let a = eigenid(&["gen", "--n", "7", "--seed", "5", "--ensemble", "complex-hermitian"]);
    let b = eigenid(&["gen", "--n", "7", "--seed", "5", "--ensemble", "complex-hermitian"]);
    assert_eq!(status(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("%%eigenid hermitian 7\n"));
    let c = eigenid(&["gen", "--n", "7", "--seed", "6", "--ensemble", "complex-hermitian"]);
    assert_ne!(a.stdout, c.stdout);

    assert_eq!(status(&eigenid(&["gen", "--n", "3", "--ensemble", "real-symmetric", "--spectrum", "1,2,3"])), 2);
    assert_eq!(status(&eigenid(&["gen", "--n", "3", "--ensemble", "prescribed"])), 2);
    assert_eq!(status(&eigenid(&["gen", "--n", "3", "--spectrum", "1,2"])), 2);
}

#[test]
fn bench_reports_one_row_per_size() {
    let out = eigenid(&["bench", "--sizes", "3,5", "--reps", "1", "--json"]);
    assert_eq!(status(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["tables"]["timings"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["n"].as_i64().unwrap()).collect::<Vec<_>>(), [3, 5]);
    assert_eq!(status(&eigenid(&["bench", "--sizes", "1"])), 2);
}
