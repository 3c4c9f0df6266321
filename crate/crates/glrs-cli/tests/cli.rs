//! Black-box tests for the command line interface: golden outputs, exit
//! codes, and output-format contracts.

use std::process::{Command, Output};

fn glrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glrs"))
        .args(args)
        .output()
        .expect("spawn glrs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn emit_det_n2_golden() {
    let out = glrs(&["emit", "det", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "t[1,1]t[2,2] - s*t[2,1]t[1,2]");
}

#[test]
fn emit_casimir_n2_k1_golden() {
    let out = glrs(&["emit", "casimir", "--n", "2", "--k", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "l+[1,1]l-[2,2] - r*l+[1,2]l-[2,1] + r*s^-1*l+[2,2]l-[1,1]"
    );
}

#[test]
fn emit_rmatrix_n2_json_golden() {
    let out = glrs(&["emit", "rmatrix", "--n", "2", "--kind", "R", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["kind"], "R");
    let entries = v["matrix"]["entries"].as_array().expect("entries");
    assert_eq!(entries.len(), 5);
    let diag = entries
        .iter()
        .find(|e| e["row"] == serde_json::json!([1, 1]))
        .expect("(11,11) entry");
    assert_eq!(diag["value"], "s");
}

#[test]
fn emit_eps_n2_minus_golden() {
    let out = glrs(&["emit", "eps", "--n", "2", "--family", "minus"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["family"], "minus");
    assert_eq!(v["bra"].as_array().unwrap().len(), 2);
    assert_eq!(v["ket"].as_array().unwrap().len(), 2);
}

#[test]
fn emit_psi_simple_root_golden() {
    let out = glrs(&["emit", "psi", "--n", "2", "--gen", "e1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "((r)/(r - s))*k+inv[1]l+[1,2]");
}

#[test]
fn emit_presentation_lists_oriented_rules() {
    let out = glrs(&["emit", "presentation", "--algebra", "fun", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("t[1,2]t[1,1] -> r*t[1,1]t[1,2]"));
    assert!(text.lines().count() >= 6);
}

#[test]
fn verify_single_claim_json() {
    let out = glrs(&["verify", "--suite", "matrix", "--n", "2", "--claims", "ybe"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let arr = v.as_array().expect("array");
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["claim"], "ybe");
    assert_eq!(arr[0]["pass"], true);
}

#[test]
fn verify_text_format_and_route_filter() {
    let out = glrs(&[
        "verify", "--suite", "fun", "--n", "2", "--claims", "det_route_equivalence",
        "--route", "col_reverse", "--format", "text",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "PASS det_route_equivalence n=2 [route=col_reverse]"
    );
}

#[test]
fn verify_skips_claims_outside_their_range() {
    let out = glrs(&[
        "verify", "--suite", "u", "--n", "2", "--claims", "prop46", "--format", "text",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "SKIP prop46 n=2 (outside supported n range)");
}

#[test]
fn list_claims_covers_all_suites() {
    let out = glrs(&["list-claims"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for suite in ["suite matrix", "suite fun", "suite u"] {
        assert!(text.contains(suite), "missing {suite}");
    }
    for claim in ["ybe", "det_quasi_central", "thm36_plus", "dj_relations"] {
        assert!(text.contains(claim), "missing {claim}");
    }
}

#[test]
fn unknown_claim_is_a_config_error() {
    let out = glrs(&["verify", "--suite", "matrix", "--n", "2", "--claims", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown claim"));
}

#[test]
fn unsupported_n_is_a_config_error() {
    let out = glrs(&["verify", "--suite", "u", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fault_injection_fails_with_witness() {
    let out = glrs(&[
        "verify", "--suite", "u", "--n", "2", "--inject-fault", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL presentation_integrity"));
    assert!(text.contains("witness"));
}
