use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sl2c(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2c"))
        .args(args)
        .env_remove("SL2C_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const SCARF: [&str; 6] = ["--model", "scarf", "--A", "2", "--B", "1.8"];

fn with<'a>(cmd: &'a str, base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(base);
    v.extend_from_slice(extra);
    v
}

#[test]
fn spectrum_lists_both_series() {
    let out = sl2c(&with("spectrum", &SCARF, &[]));
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["results"]["count"], 4);
    let e: Vec<f64> = doc["results"]["energies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let want = [-4.0, -1.69, -1.0, -0.09];
    for (a, b) in e.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn potential_csv_has_expected_columns() {
    let out = sl2c(&with(
        "potential",
        &SCARF,
        &["--x-min", "-1", "--x-max", "1", "--format", "csv"],
    ));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re_V,im_V"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    let x = first[0];
    let want_re = -(1.8f64 * 1.8 + 6.0) / x.cosh().powi(2);
    assert!((first[1] - want_re).abs() < 1e-12);
    assert!(text.lines().count() > 30);
}

#[test]
fn verify_passes_on_a_coarse_grid() {
    let out = sl2c(&with("verify", &SCARF, &["--n-points", "500"]));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["levels_matched", "spectral_reality", "no_spurious"] {
        assert!(names.contains(&n), "{names:?}");
    }
}

#[test]
fn failed_check_exits_two() {
    let out = sl2c(&with(
        "verify",
        &SCARF,
        &["--n-points", "300", "--no-richardson", "--e-tol", "1e-12"],
    ));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("check failed"));
    assert!(json(&out)["checks"].is_array());
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(
        sl2c(&["spectrum", "--model", "scarf", "--A", "2", "--B", "-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        sl2c(&["spectrum", "--model", "nosuch"]).status.code(),
        Some(1)
    );
    assert_eq!(sl2c(&["frobnicate"]).status.code(), Some(1));
    let out = sl2c(&["spectrum", "--model", "scarf", "--A", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn iteration_cap_exits_three() {
    let out = sl2c(&with(
        "verify",
        &SCARF,
        &["--n-points", "200", "--max-sweeps", "1"],
    ));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_and_version_exit_zero() {
    let out = sl2c(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("SL2C_OUT_DIR"));
    assert_eq!(sl2c(&["--version"]).status.code(), Some(0));
}

#[test]
fn output_goes_to_env_dir_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sl2c"))
            .args(with(
                "verify",
                &SCARF,
                &["--n-points", "400", "--format", "csv"],
            ))
            .env("SL2C_OUT_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stdout.is_empty());
    let path = dir.path().join("verify.csv");
    let a = std::fs::read(&path).unwrap();
    assert!(run().status.success());
    let b = std::fs::read(&path).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8(a)
        .unwrap()
        .starts_with("kind,label,n,analytic,re,im,gap\n"));
}

#[test]
fn explicit_output_wins_over_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested").join("s.json");
    let out = Command::new(env!("CARGO_BIN_EXE_sl2c"))
        .args(with("spectrum", &SCARF, &["-o", target.to_str().unwrap()]))
        .env("SL2C_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(target.exists());
    assert!(!Path::new(&dir.path().join("spectrum.json")).exists());
    let doc: Value = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(doc["params"]["model"], "scarf");
}

#[test]
fn wavefunction_reports_small_residual() {
    let out = sl2c(&with(
        "wavefunction",
        &SCARF,
        &["--series", "B", "--n", "1"],
    ));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "schrodinger_residual" && c["pass"] == true));
}

#[test]
fn family_and_morse_algebra_checks_pass() {
    let out = sl2c(&[
        "algebra-check",
        "--model",
        "family",
        "--kind",
        "II",
        "--b_R",
        "1.2",
        "--b_I",
        "0.3",
        "--gamma",
        "0.4",
        "--m",
        "2.5",
        "--trials",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = sl2c(&[
        "algebra-check",
        "--model",
        "morse",
        "--A",
        "2.5",
        "--B_R",
        "2",
        "--B_I",
        "1",
        "--trials",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn crossing_scan_finds_the_degeneracy() {
    let out = sl2c(&[
        "crossing-scan",
        "--model",
        "scarf",
        "--A",
        "2",
        "--B_from",
        "1.3",
        "--B_to",
        "1.7",
        "--steps",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("B,gap,n_A,n_B,E_A,E_B,defect\n"));
    let at = text
        .lines()
        .find(|l| l.starts_with("1.5,"))
        .expect("row for B = 1.5");
    let gap: f64 = at.split(',').nth(1).unwrap().parse().unwrap();
    assert!(gap < 1e-12);
}
