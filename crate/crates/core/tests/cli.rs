//! The `tiling` binary: exit codes and output formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn tiling(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiling")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn eval_reports_rho_and_residuals() {
    let o = tiling(&["eval", "--params", &fixture("k6_published.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["metrics"]["rho"].as_f64().unwrap() - 6992.1655).abs() < 1e-3);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(tiling(&["verify", "--params", &fixture("croft_k4.json")]).status.code(), Some(0));
    let o = tiling(&["verify", "--params", &fixture("broken_croft_k4.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["proper"], serde_json::Value::Bool(false));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tiling(&["optimize", "--family", "k9"]).status.code(), Some(2));
    assert_eq!(tiling(&["render"]).status.code(), Some(2));
    assert_eq!(tiling(&["eval", "--params", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn optimize_then_verify() {
    let dir = std::env::temp_dir().join(format!("tiling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("pritikin.json").display().to_string();
    let o = tiling(&["optimize", "--family", "k6", "--flags", "pritikin", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert!((json(&o)["rho"].as_f64().unwrap() - 6197.5793083297).abs() < 1e-6);
    assert_eq!(tiling(&["verify", "--params", &out]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn render_writes_svg() {
    let dir = std::env::temp_dir().join(format!("tiling-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("k6.svg");
    let o = tiling(&["render", "--params", &fixture("k6_published.json"), "--zoom", "10", "--constraints", "--out", &out.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"class="void""#) && svg.contains(r#"class="constraint""#));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounds_json_rows() {
    let o = tiling(&["bounds", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    for n in ["6992", "6993", "24", "25"] {
        assert!(text.contains(n), "{text}");
    }
}
