//! End-to-end checks of the command-line surface through the built binary.

use std::process::{Command, Output};

fn mockhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mockhecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn psi_text_and_json() {
    let out = mockhecke(&["psi", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x - 744");

    let out = mockhecke(&["psi", "0"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = mockhecke(&["psi", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["-36866976", "1069956", "-2232", "1"])
    );
}

#[test]
fn fpoly_examples_and_usage_error() {
    let out = mockhecke(&["fpoly", "2"]);
    assert_eq!(stdout(&out).trim(), "x^2 - 1728x");

    let out = mockhecke(&["fpoly", "3", "--split-endpoints"]);
    assert_eq!(stdout(&out).trim(), "x * (x - 768) * (x - 1728)");

    let out = mockhecke(&["fpoly", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roots_csv_has_endpoint_rows() {
    let out = mockhecke(&["roots", "2", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "m,ell,x,theta,u");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("2,,0,1.04719755119659774615"));
    assert!(rows[1].starts_with("2,,1.728e3,1.57079632679489661923"));
}

#[test]
fn exact_coefficients() {
    let out = mockhecke(&["coeff", "0"]);
    assert_eq!(stdout(&out).trim(), "-2615348736000/691");
    let out = mockhecke(&["coeff", "-1"]);
    assert_eq!(stdout(&out).trim(), "39916800");
}

#[test]
fn numeric_coefficient_with_small_cutoff() {
    let out = mockhecke(&["coeff", "1", "--cmax", "200", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let value: f64 = v["a"]["value"].as_str().unwrap().parse().unwrap();
    assert!((value + 73562460235.68364).abs() / 73562460235.68364 < 1e-6);
    assert_eq!(v["a"]["c_max"], 200);
    assert!(v["a"]["tail_estimate"].is_string());
}

#[test]
fn beta_with_small_cutoff() {
    let out = mockhecke(&["beta", "--cmax", "300"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("beta = 2.84028"));
}

#[test]
fn bound_check_rejects_small_index() {
    let out = mockhecke(&["bound-check", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_check_small_grid() {
    let out = mockhecke(&["bound-check", "3", "--grid", "5", "--cmax", "250", "--json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["pass"] == serde_json::json!(true)));
}

#[test]
fn divisor_poly_weight_12() {
    let out = mockhecke(&["divisor-poly", "12"]);
    assert_eq!(stdout(&out).trim(), "x - 432000/691");
}

#[test]
fn equidist_output_shape() {
    let out = mockhecke(&["equidist", "6", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["positions"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_quick_passes() {
    let out = mockhecke(&["verify", "--level", "quick"]);
    assert!(out.status.success(), "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    let a = mockhecke(&["coeff", "2", "--cmax", "150", "--json"]);
    let b = mockhecke(&["coeff", "2", "--cmax", "150", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = mockhecke(&["roots", "4", "--csv"]);
    let d = mockhecke(&["roots", "4", "--csv"]);
    assert_eq!(stdout(&c), stdout(&d));
}

#[test]
fn unknown_flag_rejected() {
    let out = mockhecke(&["psi", "1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
