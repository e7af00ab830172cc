use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_procstar"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("PROCSTAR_")) {
        c.env_remove(k);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn element_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const Z_DIFF: &str = r#"{"group":{"family":"z"},"terms":[{"g":[1],"c":[1,0]},{"g":[0],"c":[-1,0]}]}"#;
const Z_ONE: &str = r#"{"group":{"family":"z"},"terms":[{"g":[0],"c":[1,0]}]}"#;
const HEIS_GHZ: &str = r#"{"group":{"family":"heisenberg"},"terms":[{"g":[1,0,0],"c":[1,0]},{"g":[0,1,0],"c":[1,0]},{"g":[0,0,1],"c":[1,0]}]}"#;

#[test]
fn group_info_examples() {
    let out = run(&["group-info", "--family", "symmetric", "--params", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["irrep_dims"], serde_json::json!([1, 1, 2]));
    assert_eq!(json(&run(&["group-info", "--family", "cyclic", "--params", "1"]))["order"], 1);
    assert_eq!(json(&run(&["group-info", "--family", "heisenberg-mod", "--params", "3"]))["order"], 27);
}

#[test]
fn seminorm_examples() {
    let a = element_file(Z_DIFF);
    let out = run(&["seminorm", "--element", a.path().to_str().unwrap(), "--modulus", "4"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"].as_f64(), Some(2.0));
    let e = element_file(Z_ONE);
    let out = run(&["seminorm", "--element", e.path().to_str().unwrap(), "--quotient", r#"{"kind":"mod","params":[5]}"#]);
    assert_eq!(json(&out)["value"].as_f64(), Some(1.0));
}

#[test]
fn invalid_element_file_is_a_usage_error() {
    let bad = element_file("{not json");
    let out = run(&["seminorm", "--element", bad.path().to_str().unwrap(), "--modulus", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = run(&["seminorm", "--element", "/nonexistent/file.json", "--modulus", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_examples() {
    let a = element_file(Z_DIFF);
    let v = json(&run(&["witness", "--element", a.path().to_str().unwrap()]));
    assert!((v["lower_bound"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["certificate"]["sound"], true);
    let h = element_file(HEIS_GHZ);
    let v = json(&run(&["witness", "--element", h.path().to_str().unwrap()]));
    assert!((v["lower_bound"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    assert!(v["certificate"]["seminorm"].as_f64().unwrap() >= 3f64.sqrt() - 1e-9);
}

#[test]
fn witness_rejects_free_group() {
    let f = element_file(r#"{"group":{"family":"free2"},"terms":[{"g":"g1","c":[1,0]}]}"#);
    assert_eq!(run(&["witness", "--element", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    assert!(run(&["verify", "seminorm-monotonicity"]).status.success());
    let out = run(&["verify", "heisenberg-relations"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(run(&["verify", "unknown-suite"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical() {
    let a = element_file(Z_DIFF);
    let args = ["sup-seminorm", "--element", a.path().to_str().unwrap(), "--moduli", "2,6,12"];
    let first = run(&args).stdout;
    assert_eq!(first, run(&args).stdout);
    // floats carry 17 significant digits
    assert!(String::from_utf8_lossy(&first).contains("2.0000000000000000e0"));
}

#[test]
fn kappa_and_separation() {
    let a = element_file(Z_DIFF);
    let v = json(&run(&["kappa", "--element", a.path().to_str().unwrap(), "--modulus", "3"]));
    assert_eq!(v["image"]["terms"].as_array().unwrap().len(), 2);
    let h = element_file(HEIS_GHZ);
    let v = json(&run(&["separate-heisenberg", "--element", h.path().to_str().unwrap()]));
    assert_eq!(v["status"], "found");
    assert!((v["norm"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn u3_check_and_caps() {
    let v = json(&run(&["u3-check", "--max-length", "5"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["words_checked"], 4 + 12 + 36 + 108 + 324);
    assert_eq!(run(&["u3-check", "--max-length", "13"]).status.code(), Some(2));
}

#[test]
fn environment_fallbacks_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = bin()
        .args(["group-info", "--family", "dihedral", "--params", "4"])
        .env("PROCSTAR_FORMAT", "text")
        .env("PROCSTAR_OUTPUT", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("order: 8"));
    let out = bin().args(["verify", "circle-norm"]).env("PROCSTAR_TAU_NORM", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_cap_is_enforced() {
    let out = run(&["--order-cap", "10", "group-info", "--family", "symmetric", "--params", "4"]);
    assert_eq!(out.status.code(), Some(2));
}
