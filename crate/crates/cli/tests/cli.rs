use std::process::Command;

use qgarnier::ratfield::RationalFunction;

fn qgarnier(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgarnier")).args(args).env_remove("QG_SEED").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn export_json_of_q101_has_ten_vertices() {
    let (code, out) = qgarnier(&["quiver", "export-json", "Q101"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 10);
}

#[test]
fn export_dot() {
    let (code, out) = qgarnier(&["quiver", "export-dot", "Q12"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph Q12 {"));
    assert_eq!(out.matches("->").count(), 24);
}

#[test]
fn relations_of_q12_pass() {
    let (code, out) = qgarnier(&["verify", "relations", "Q12", "--trials", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(r0 r1)^3"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn tau_c_into_q103_is_divergent() {
    let (code, out) = qgarnier(&["confluence", "Q11", "5", "8", "--word", "tau_c", "--trials", "2"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("DIVERGENT"), "{out}");
    let (code, _) = qgarnier(&["confluence", "Q11", "5", "8", "--word", "V", "--trials", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn confluence_without_word_prints_the_limit_seed() {
    let (code, out) = qgarnier(&["confluence", "Q12", "12", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Quiver(n=11)"));
    assert!(out.contains("y11 = y11"));
}

#[test]
fn mutate_prints_images() {
    let (code, out) = qgarnier(&["mutate", "Q12", "--word", "m1"]);
    assert_eq!(code, 0);
    let img = out.lines().find_map(|l| l.strip_prefix("y1 -> ")).unwrap();
    assert!(RationalFunction::parse(img).unwrap().equals(&RationalFunction::parse("1/y1").unwrap()));
}

#[test]
fn derive_riccati_and_orbit() {
    let (code, out) = qgarnier(&["derive-riccati", "Q11"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    let (code, out) = qgarnier(&[
        "orbit", "Q12", "--start", "0.4,-0.7,1.3", "--steps", "3", "--alpha", "0.9,1.1,0.95,1.05,0.98,1.01",
    ]);
    assert_eq!(code, 0, "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,y1,y5,y9,drift,deviation");
    assert_eq!(lines.len(), 5);
}

#[test]
fn hypergeometric_report() {
    let (code, out) = qgarnier(&["check-hypergeometric", "Q11", "--t", "0.02,0.05"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["residuals"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["linear"].as_f64().unwrap() < 1e-9);
    assert!(rows[0]["riccati_printed_assignment"].as_f64().unwrap() > 1e-3);
}

#[test]
fn degeneration_report() {
    let (code, out) = qgarnier(&["check-degeneration", "Q11", "Q102"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix_limit_exact"], true);
    assert!((v["slope"].as_f64().unwrap() - 1.0).abs() < 0.15);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qgarnier(&["quiver", "show", "Q7"]).0, 2);
    assert_eq!(qgarnier(&["check-hypergeometric", "Q103"]).0, 2);
    assert_eq!(qgarnier(&["frobnicate"]).0, 2);
    assert_eq!(qgarnier(&["verify", "everything", "Q12"]).0, 2);
    assert_eq!(qgarnier(&["suite", "--output", "yaml"]).0, 2);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qgarnier"))
            .args(["verify", "tables", "Q101", "--output", "json"])
            .env("QG_SEED", seed)
            .output()
            .unwrap();
        (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
    };
    let (a, b) = (run("5"), run("5"));
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let out = Command::new(env!("CARGO_BIN_EXE_qgarnier")).args(["suite"]).env("QG_SEED", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
