use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn calc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weinstein-calc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = calc(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["schema"], "weincalc/1");
    doc
}

fn descriptor(name: &str, body: &str) -> PathBuf {
    let path =
        std::env::temp_dir().join(format!("weincalc-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn cpn_reports_both_forms() {
    let doc = json(&["cpn", "--n", "3", "--k", "2", "--json"]);
    assert_eq!(doc["q"], "3/10");
    assert_eq!(doc["value"]["multiple_of_pi_k_over_k_factorial"], "3/10");
    assert_eq!(doc["value"]["pi_coefficients"][0]["pi_exp"], 2);
    assert_eq!(doc["value"]["pi_coefficients"][0]["num"][0][1], "3/20");
    assert_eq!(doc["order"]["kind"], "finite");
    assert_eq!(doc["order"]["order"], "10");
    assert_eq!(doc["trivial"], false);
    assert_eq!(doc["flags"], Value::Array(vec![]));
}

#[test]
fn blowup_orders_and_flag() {
    let doc = json(&["blowup", "--n", "4", "--k", "2", "--json"]);
    assert_eq!(doc["order"]["kind"], "infinite");
    assert!(doc["flags"].as_array().unwrap().is_empty());

    let doc = json(&["blowup", "--n", "3", "--k", "3", "--rho", "0.5", "--json"]);
    assert_eq!(doc["order"]["order"], "2");
    assert_eq!(doc["flags"][0]["code"], "blowup_top_degree_finite_order");
    // 1/2 * (1 + x^3) at x = 1/4
    assert_eq!(doc["at_rho"]["multiple_of_pi_k_over_k_factorial"], "65/128");
}

#[test]
fn moment_exact_and_monte_carlo() {
    let doc = json(&["moment", "--n", "2", "--l", "1", "--k", "1", "--json"]);
    assert_eq!(doc["moment"]["value"], "1/6");
    assert_eq!(doc["moment"]["pi_exp"], 2);
    let doc = json(&[
        "moment",
        "--n",
        "1",
        "--l",
        "1",
        "--k",
        "1",
        "--mc",
        "--samples",
        "200000",
        "--seed",
        "3",
        "--json",
    ]);
    assert!(doc["monte_carlo"]["sigma"].as_f64().unwrap() < 4.0);
}

#[test]
fn identity_passes() {
    let doc = json(&["identity", "--k-max", "5", "--json"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["checks"][4]["closed_form"], "483840");
}

#[test]
fn product_with_descriptor() {
    let path = descriptor(
        "sphere",
        r#"{"dimension": 2, "trivial_odd_homotopy": [1], "periods": {"2": ["1"]},
            "classes": {"psi": {"degree": 1, "value": [{"pi_exp": 0, "num": [[0, "1/2"]], "den": [[0, "1"]]}]}}}"#,
    );
    let p = path.to_str().unwrap();
    let doc = json(&["product", "--n", "2", "--k", "1", "--manifold", p, "--json"]);
    assert_eq!(doc["order"]["order"], "3");
    let doc = json(&[
        "product",
        "--n",
        "2",
        "--k",
        "1",
        "--manifold",
        p,
        "--class",
        "psi",
        "--json",
    ]);
    assert_eq!(doc["order"]["order"], "6");
    assert_eq!(
        calc(&[
            "product",
            "--n",
            "2",
            "--k",
            "1",
            "--manifold",
            p,
            "--class",
            "nope"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn product_refusals() {
    let irrational = descriptor(
        "irrational",
        r#"{"dimension": 2, "trivial_odd_homotopy": [1], "periods": {"2": ["sqrt(2)"]}}"#,
    );
    let out = calc(&[
        "product",
        "--n",
        "2",
        "--k",
        "1",
        "--manifold",
        irrational.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("periods.2[0]"));

    let nontrivial = descriptor("nontrivial", r#"{"dimension": 2, "periods": {"2": ["1"]}}"#);
    let out = calc(&[
        "product",
        "--n",
        "2",
        "--k",
        "1",
        "--manifold",
        nontrivial.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_parameters_exit_2() {
    for args in [
        &["cpn", "--n", "2", "--k", "3"][..],
        &["cpn", "--n", "2", "--k", "0"],
        &["blowup", "--n", "2", "--k", "1", "--rho", "1"],
        &["moment", "--n", "2", "--l", "3", "--k", "1"],
        &["moment", "--n", "2", "--l", "1", "--k", "1", "--r0", "-1"],
        &["identity", "--k-max", "0"],
        &["cpn", "--n", "two", "--k", "1"],
    ] {
        let out = calc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_quick_json_is_byte_identical() {
    let a = calc(&["verify", "--quick", "--json"]);
    let b = calc(&["verify", "--quick", "--json"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["report"]["criteria"].as_array().unwrap().len(), 9);
}

#[test]
fn injected_fault_fails_verification() {
    for fault in ["moment", "cpn"] {
        let out = calc(&["verify", "--quick", "--inject-fault", fault]);
        assert_eq!(out.status.code(), Some(1), "{fault}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
    }
}
