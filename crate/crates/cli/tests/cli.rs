use std::process::{Command, Output};

use serde_json::Value;

fn dyn_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyn")).args(args).env_remove("DYN_FACTOR_EFFORT").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let out = dyn_cmd(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_certified_branch() {
    let r = json(&["classify", "--family", "no-auto", "--n", "3", "--v", "9/2", "--prime-budget", "100"]);
    assert_eq!(r["status"], "certified");
    assert_eq!(r["groups"][0]["label"], "C");
    assert_eq!(r["v"], "9/2");
    assert_eq!(r["evidence"]["memberships"][0]["preimage"], "-1");
}

#[test]
fn negative_parameters_parse() {
    let r = json(&["classify", "--family", "no-auto", "--n", "3", "--v", "-5/3", "--prime-budget", "50"]);
    assert_eq!(r["v"], "-5/3");
}

#[test]
fn group_info() {
    let r = json(&["group", "--family", "no-auto", "--n", "3", "--label", "W", "--info"]);
    assert_eq!(r["order"], 18);
    assert_eq!(r["degrees"], serde_json::json!([6]));
    assert_eq!(r["root_density"], "5/18");
}

#[test]
fn symbolic_dynatomic_polynomial() {
    let r = json(&["dynatomic", "--family", "auto", "--n", "3", "--symbolic"]);
    assert_eq!(r["degree_x"], 6);
    let c = r["x_coefficients"].as_array().unwrap();
    assert_eq!(c[6], "t^4 - t^3");
    assert_eq!(c[5], "-9*t^3");
    assert_eq!(c[0], "t^2 - 4*t + 3");
}

#[test]
fn family_density_and_degrees() {
    let d = json(&["group", "--family", "no-auto", "--n", "4", "--density"]);
    assert_eq!(d["no_root_density"], "3/8");
    let g = json(&["group", "--family", "no-auto", "--n", "4", "--degrees"]);
    assert_eq!(g["degrees"], serde_json::json!([2, 4, 6, 8, 12]));
}

#[test]
fn subgroup_listing() {
    let r = json(&["group", "--family", "no-auto", "--n", "4", "--subgroups"]);
    assert_eq!(r["count"], 164);
    let r = json(&["group", "--family", "no-auto", "--n", "3", "--label", "W", "--subgroups"]);
    assert!(r["count"].as_u64().unwrap() > 3);
}

#[test]
fn scan_milnor_and_normal_form() {
    let s = json(&["scan", "--family", "no-auto", "--v", "2"]);
    assert_eq!(s["periods"][1]["points"], serde_json::json!(["0/1", "inf"]));
    assert!(s["periods"][2]["points"].as_array().unwrap().is_empty());
    let m = json(&["milnor", "--map", "1/x^2"]);
    assert_eq!((m["r"].as_str(), m["s"].as_str()), (Some("-6"), Some("12")));
    assert_eq!(m["curves"], serde_json::json!(["C2", "S"]));
    let n = json(&["normal-form", "--map", "7(x - 1)/x^2"]);
    assert_eq!(n["normal_form"]["kind"], "no-auto");
}

#[test]
fn identify_from_coefficients() {
    // Third dynatomic polynomial of the no-auto family at v = 9/2.
    let phi = json(&["dynatomic", "--family", "no-auto", "--n", "3", "--v", "9/2"]);
    assert_eq!(phi["degree"], 6);
    assert_eq!(phi["coefficients"].as_array().unwrap().len(), 7);
    let r = json(&[
        "identify",
        "--family",
        "no-auto",
        "--n",
        "3",
        "--coeffs",
        "81/4,-243/4,81,-261/4,135/4,-9,1",
        "--prime-budget",
        "200",
    ]);
    assert_eq!(r["best_match"], "C");
}

#[test]
fn excluded_parameter_is_a_domain_error() {
    let out = dyn_cmd(&["classify", "--family", "no-auto", "--n", "3", "--v", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ExcludedParameter");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(dyn_cmd(&["classify", "--family", "no-auto", "--n", "3", "--v", "x/y"]).status.code(), Some(2));
    assert_eq!(dyn_cmd(&["classify", "--family", "quartic", "--n", "3", "--v", "1"]).status.code(), Some(2));
    assert_eq!(dyn_cmd(&["group", "--family", "auto", "--n", "3"]).status.code(), Some(2));
    let out = dyn_cmd(&["group", "--family", "auto", "--n", "5", "--degrees"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InvalidArgument");
}

#[test]
fn factor_effort_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dyn"))
        .args(["scan", "--family", "no-auto", "--v", "2", "--n-max", "2"])
        .env("DYN_FACTOR_EFFORT", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_dyn"))
        .args(["scan", "--family", "no-auto", "--v", "2", "--n-max", "2"])
        .env("DYN_FACTOR_EFFORT", "1000")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--family", "auto", "--n", "4", "--v", "7", "--output", "json", "--prime-budget", "80"];
    let a = dyn_cmd(&args);
    let b = dyn_cmd(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
