//! End-to-end tests of the `valise` binary: JSON outputs, exit codes, and
//! byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn valise(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valise"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).unwrap();
}

const REFERENCE_MATRICES: &str = r#"{
  "d": 4, "n": 4,
  "matrices": [
    [[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]],
    [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
    [[0,0,0,1],[0,0,-1,0],[0,-1,0,0],[1,0,0,0]],
    [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]
  ]
}"#;

#[test]
fn count_reproduces_published_values() {
    let out = valise(&["count", "--n", "4", "--d", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"n\":4,\"d\":4,\"k\":1,\"codes\":1,\"unsigned_classes\":6,\"signed_classes\":1536}\n"
    );

    let out = valise(&["count", "--n", "8", "--d", "8"]);
    assert_eq!(
        stdout(&out),
        "{\"n\":8,\"d\":8,\"k\":4,\"codes\":30,\"unsigned_classes\":151200,\"signed_classes\":79272345600}\n"
    );
}

#[test]
fn count_is_byte_deterministic() {
    let a = valise(&["count", "--n", "8", "--d", "8"]);
    let b = valise(&["count", "--n", "8", "--d", "8"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn count_impossible_d_prints_zeros() {
    let out = valise(&["count", "--n", "4", "--d", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"k\":null"));
    assert!(stdout(&out).contains("\"signed_classes\":0"));
}

#[test]
fn count_lists_flag_scales_by_n_factorial() {
    let out = valise(&["count", "--n", "4", "--d", "4", "--lists"]);
    assert!(stdout(&out).contains("\"unsigned_classes\":144"));
    assert!(stdout(&out).contains("\"signed_classes\":36864"));
}

#[test]
fn codes_listing_and_count() {
    let out = valise(&["codes", "--n", "8", "--k", "4", "--count-only"]);
    assert_eq!(stdout(&out), "{\"count\":30}\n");

    let out = valise(&["codes", "--n", "4", "--k", "1"]);
    assert_eq!(stdout(&out), "[{\"n\":4,\"k\":1,\"generators\":[\"1111\"]}]\n");

    let out = valise(&["codes", "--n", "4", "--k", "2"]);
    assert_eq!(stdout(&out), "[]\n");
}

#[test]
fn codes_guard_exits_three() {
    let out = valise(&["codes", "--n", "13", "--k", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = valise(&["codes", "--n", "13", "--k", "1", "--count-only"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_writes_adinkra_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("valise.json");
    let dot_path = dir.path().join("valise.dot");
    let out = valise(&[
        "build",
        "--n",
        "2",
        "--k",
        "0",
        "--index",
        "0",
        "--out",
        json_path.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&json_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed["n"], 2);
    assert_eq!(parsed["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 4);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("graph valise {"));
    assert!(dot.contains("style=dashed"));
}

#[test]
fn build_from_code_file_selects_dashings() {
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("code.json");
    write(&code_path, r#"{"n":4,"k":1,"generators":["1111"]}"#);
    let out_path = dir.path().join("a.json");

    let out = valise(&[
        "build",
        "--code",
        code_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--dash",
        "index:255",
    ]);
    assert!(out.status.success());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(body["edges"].as_array().unwrap().len(), 16);

    // only 256 dashings exist: indices 0..=255
    let out = valise(&[
        "build",
        "--code",
        code_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--dash",
        "index:256",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn build_rejects_malformed_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("bad.json");
    write(&code_path, r#"{"n":4,"k":1,"generators":["1100"]}"#);
    let out = valise(&[
        "build",
        "--code",
        code_path.to_str().unwrap(),
        "--out",
        dir.path().join("x.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reference_matrices_pass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("good.json");
    write(&path, REFERENCE_MATRICES);
    let out = valise(&["verify", "--matrices", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn verify_flipped_sign_fails_with_pair_witness() {
    let mut doc: serde_json::Value = serde_json::from_str(REFERENCE_MATRICES).unwrap();
    doc["matrices"][1][0][1] = serde_json::json!(1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flipped.json");
    write(&path, &doc.to_string());
    let out = valise(&["verify", "--matrices", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
    // every failing pair involves the tampered matrix
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().any(|name| name.contains("(1,2)")));
    assert!(failing
        .iter()
        .all(|name| name.contains("(1,2)") || name.contains("(2,3)") || name.contains("(2,4)")));
}

#[test]
fn verify_schema_violation_exits_two() {
    let mut doc: serde_json::Value = serde_json::from_str(REFERENCE_MATRICES).unwrap();
    doc["matrices"][0][0][2] = serde_json::json!(2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.json");
    write(&path, &doc.to_string());
    let out = valise(&["verify", "--matrices", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("matrix 1"));
    assert!(err.contains("row 1"));
}

#[test]
fn oracle_modes_match_formulas() {
    let out = valise(&["oracle", "--n", "2", "--d", "2", "--signed"]);
    assert_eq!(stdout(&out), "{\"brute\":8,\"formula\":8,\"match\":true}\n");
    assert!(out.status.success());

    let out = valise(&["oracle", "--n", "4", "--d", "4"]);
    assert_eq!(stdout(&out), "{\"brute\":6,\"formula\":6,\"match\":true}\n");

    let out = valise(&["oracle", "--codes", "--n", "8", "--k", "4"]);
    assert_eq!(stdout(&out), "{\"brute\":30,\"formula\":30,\"match\":true}\n");

    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("code.json");
    write(&code_path, r#"{"n":4,"k":1,"generators":["1111"]}"#);
    let out = valise(&[
        "oracle",
        "--dashings",
        "--code",
        code_path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "{\"brute\":256,\"formula\":256,\"match\":true}\n");
}

#[test]
fn oracle_guard_exits_three() {
    let out = valise(&["oracle", "--n", "5", "--d", "2", "--signed"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let out = valise(&["count", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = valise(&["oracle", "--codes", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
}
