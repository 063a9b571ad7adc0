use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geocrystal")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn cartan_record() {
    let v = json(&["cartan", "--type", "A1", "--rank", "2"]);
    assert_eq!(v["matrix"], serde_json::json!([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]));
    assert_eq!(v["dual"]["family"], "A1");
}

#[test]
fn bad_rank_is_an_error() {
    let out = run(&["cartan", "--type", "D1", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trop_prints_max_plus() {
    let out = run(&["trop", "(c*x + y)/(x + y)"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "max(c + x, y) - max(x, y)");
    assert!(!run(&["trop", "x - y"]).status.success());
}

#[test]
fn geom_eval_a1() {
    let v = json(&["geom", "eval", "--type", "A1", "--rank", "2", "--point", r#"{"x1": 2, "x2": 3}"#]);
    let ch = &v["charts"][0];
    assert_eq!(ch["v"]["[1]"], "2");
    assert_eq!(ch["v"]["[2]"], "3");
    assert_eq!(ch["v"]["[3]"], "1");
}

#[test]
fn geom_eval_reports_both_charts() {
    let pt = r#"{"x0": 1, "x1": 2, "x2": "1/2", "xb1": 3}"#;
    let v = json(&["geom", "eval", "--type", "A2dag", "--rank", "2", "--point", pt]);
    let charts = v["charts"].as_array().unwrap();
    assert_eq!(charts.len(), 2);
    assert_eq!(charts[1]["chart"], 2);
    assert!(charts[1]["eps"].get("0").is_some());
    // the same point seen from chart 2 gives the same report
    let y = serde_json::to_string(&charts[1]["point"]).unwrap();
    let w = json(&["geom", "eval", "--type", "A2dag", "--rank", "2", "--point", &y]);
    assert_eq!(w["charts"], v["charts"]);
}

#[test]
fn geom_sigma_a1() {
    let v = json(&["geom", "sigma", "--type", "A1", "--rank", "3", "--point", r#"{"x1": 2, "x2": 3, "x3": 5}"#]);
    assert_eq!(v["a"], "1/5");
    assert_eq!(v["y"]["x3"], "3/5");
}

#[test]
fn geom_rejects_wrong_coordinates() {
    let out = run(&["geom", "eval", "--type", "B1", "--rank", "3", "--point", r#"{"x1": 1}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["geom", "eval", "--type", "A2even", "--rank", "2", "--point", "{}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_report() {
    let dir = std::env::temp_dir().join(format!("geocrystal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["verify", "ud", "--type", "C1", "--rank", "2", "--mode", "sampled", "--samples", "300", "--box", "5", "--seed", "9"];
    let out = run(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["check"], "ud");
    assert_eq!(v["type"], "C1");
    assert_eq!(v["mode"], "sampled");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"], serde_json::json!([]));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_symbolic_passes() {
    let out = run(&["verify", "verma", "--type", "D2", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_unknown_check() {
    assert_eq!(run(&["verify", "nope", "--type", "A1", "--rank", "2"]).status.code(), Some(2));
}

#[test]
fn graph_dot() {
    let out = run(&["graph", "--type", "A1", "--rank", "2", "--radius", "1", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 3);
    assert_eq!(run(&["graph", "--type", "A2dag", "--rank", "2", "--radius", "1"]).status.code(), Some(2));
}
