use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn carlson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlson"))
        .args(args)
        .env_remove("CARLSON_PRECISION")
        .output()
        .expect("spawn carlson")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_examples() {
    let out = carlson(&["classify", "--a", "0.5", "--b", "0.1667"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["symbolic_class"], "StrictlyIncreasing");

    let out = carlson(&["classify", "--a", "0", "--b", "0"]);
    assert_eq!(json(&out)["symbolic_class"], "StrictlyDecreasing");
    assert_eq!(json(&out)["numeric_class"], "StrictlyDecreasing");

    let out = carlson(&["classify", "--a", "0.5", "--b", "0.14"]);
    let v = json(&out);
    assert_eq!(v["symbolic_class"], "UniqueMax");
    let x1 = v["extrema"]["x1"].as_f64().unwrap();
    assert!((x1 - 0.3827).abs() < 1e-4);
}

#[test]
fn classify_negative_parameters() {
    let out = carlson(&["classify", "--a", "-0.2", "--b", "-0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["symbolic_class"], "StrictlyDecreasing");
}

#[test]
fn classify_conflict_exits_two() {
    // The sliver where the closed-form max-then-min condition overclaims.
    let out = carlson(&["classify", "--a", "0.52", "--b", "0.13"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["symbolic_class"], "MaxThenMin");
    assert_eq!(v["numeric_class"], "StrictlyIncreasing");
}

#[test]
fn missing_arguments_are_usage_errors() {
    let out = carlson(&["classify", "--a", "0.1"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(carlson(&[]).status.code(), Some(64));
    assert_eq!(carlson(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(carlson(&["--help"]).status.code(), Some(0));
    assert_eq!(carlson(&["--version"]).status.code(), Some(0));
    assert_eq!(carlson(&["table", "--help"]).status.code(), Some(0));
}

#[test]
fn table_csv_format_contract() {
    let out = carlson(&["table", "--grid", "9", "--families", "carlson", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,lower,upper,reference,width,lower_family,upper_family");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[1].split(',').next().unwrap().parse::<f64>().unwrap(), 0.1);
}

#[test]
fn table_widths_positive() {
    let out = carlson(&["table", "--grid", "100"]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 100);
    for row in rows {
        assert!(row["width"].as_f64().unwrap() > 0.0);
        let (lo, up, r) = (
            row["lower"].as_f64().unwrap(),
            row["upper"].as_f64().unwrap(),
            row["reference"].as_f64().unwrap(),
        );
        assert!(lo <= r && r <= up);
    }
}

#[test]
fn table_json_length_and_grid_guard() {
    let out = carlson(&["table", "--grid", "5", "--format", "json"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 5);
    assert_eq!(carlson(&["table", "--grid", "1"]).status.code(), Some(64));
}

#[test]
fn approx_contains_pi_over_three() {
    let out = carlson(&["approx", "--x", "0.5"]);
    let v = json(&out);
    let value = v["value"].as_f64().unwrap();
    let radius = v["radius"].as_f64().unwrap();
    assert!((value - PI / 3.0).abs() <= radius);
}

#[test]
fn bounds_reflection_and_families() {
    let out = carlson(&["bounds", "--x", "-0.5", "--families", "carlson,thm2(1/6)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (lo, up) = (v["lower"].as_f64().unwrap(), v["upper"].as_f64().unwrap());
    assert!(lo <= 2.0 * PI / 3.0 && 2.0 * PI / 3.0 <= up);

    let out = carlson(&["bounds", "--x", "0.3", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "family,lower,upper");
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn invalid_inputs_are_usage_errors() {
    assert_eq!(carlson(&["bounds", "--x", "1.5"]).status.code(), Some(64));
    assert_eq!(carlson(&["bounds", "--x", "0.5", "--families", "thm9"]).status.code(), Some(64));
    assert_eq!(
        carlson(&["bounds", "--x", "0.5", "--families", "thm2(0.1)"]).status.code(),
        Some(64)
    );
    assert_eq!(carlson(&["approx", "--x", "0.5", "--precision", "5"]).status.code(), Some(64));
    assert_eq!(carlson(&["table", "--grid", "3", "--format", "xml"]).status.code(), Some(64));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_carlson"))
        .args(["approx", "--x", "0.5"])
        .env("CARLSON_PRECISION", "30")
        .output()
        .unwrap();
    let v = json(&out);
    let reference = v["reference"].as_str().unwrap();
    assert!(reference.starts_with("1.0471975511965977461542144610"));
}

#[test]
fn extrema_report() {
    let out = carlson(&["extrema", "--a", "0.5", "--b", "0.14"]);
    let v = json(&out);
    assert!((v["disc_closed"].as_f64().unwrap() - 0.0064).abs() < 1e-15);
    assert_eq!(v["x2"].as_f64().unwrap(), 1.0);
    assert!(v["min_coeff"].is_null());
    assert_eq!(carlson(&["extrema", "--a", "0", "--b", "0"]).status.code(), Some(64));
}
