use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    forge(args).status.code().unwrap()
}

fn sidecar(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path.with_extension("json")).unwrap()).unwrap()
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (String, Value) {
    let path = dir.join(name);
    let mut full = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    let out = forge(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (std::fs::read_to_string(&path).unwrap(), sidecar(&path))
}

#[test]
fn partner_matches_poeschl_teller() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, meta) = run_to(dir.path(), "p.csv", &["partner"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,V0,V1,alpha1"));
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let s = 1.0 / (0.5 * v[0]).cosh();
        assert!((v[2] + 0.5 * s * s).abs() < 1e-12, "{line}");
    }
    assert_eq!(meta["epsilon"], -0.25);
}

#[test]
fn soliton_sidecar_reports_reduced_energy() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["soliton", "--case", "1", "--k0", "0.5", "--alpha", "2", "--beta", "1", "--gamma", "3", "--g0", "-1", "--mode", "1"];
    let (csv, meta) = run_to(dir.path(), "s.csv", &args);
    assert!(csv.starts_with("x,V,g,phi,X\n"));
    assert_eq!(csv.lines().count(), 2002);
    assert!((meta["E"].as_f64().unwrap() - 5.0).abs() < 1e-12);
    assert!((meta["Lambda"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(meta["inlse_residual"].as_f64().unwrap() < 1e-5);
}

#[test]
fn case2b_wronskian() {
    let dir = tempfile::tempdir().unwrap();
    let (_, meta) = run_to(dir.path(), "b.csv", &["soliton", "--case", "2b", "--k1", "0.4"]);
    assert!((meta["Lambda"].as_f64().unwrap() + 0.036).abs() < 1e-12);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["partner"][..], &["soliton", "--case", "2a"], &["figure", "4b"]] {
        let a = run_to(dir.path(), "a.csv", args);
        let b = run_to(dir.path(), "b.csv", args);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }
    assert_eq!(forge(&["verify"]).stdout, forge(&["verify"]).stdout);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"case": "2b", "k1": 0.3, "npoints": 101}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let (csv, meta) = run_to(dir.path(), "o.csv", &["soliton", "--config", c, "--k1", "0.4"]);
    assert_eq!(csv.lines().count(), 102);
    assert_eq!(meta["case"], "2b");
    assert!((meta["Lambda"].as_f64().unwrap() + 0.036).abs() < 1e-12);

    std::fs::write(&cfg, r#"{"kase": "2b"}"#).unwrap();
    assert_eq!(code(&["soliton", "--config", c]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--case", "1"]), 0);
    assert_eq!(code(&["verify", "--case", "2b", "--k0", "0.5", "--k1", "0.5"]), 1);
    assert_eq!(code(&["verify", "--tol", "inlse=1e-12"]), 1);
    assert_eq!(code(&["soliton", "--npoints", "2"]), 2);
    assert_eq!(code(&["figure", "9z"]), 2);
    assert_eq!(code(&["soliton", "--case", "3"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn verify_prints_a_row_per_check() {
    let out = forge(&["verify", "--case", "2c"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    for name in ["partner", "schrodinger", "wronskian", "pinney", "inlse"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing:\n{text}");
    }
}

#[test]
fn sd_on_unbounded_case_is_refused() {
    let out = forge(&["soliton", "--case", "2c", "--solution", "sd", "--g0", "-1"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
}
