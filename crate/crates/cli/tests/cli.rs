use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn grpalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpalg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grpalg-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn wedderburn_s3() {
    let out = grpalg(&["wedderburn", "--group", "builtin:s3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total_dimension"], 6);
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
}

#[test]
fn group_file_and_text_output() {
    let dir = scratch("file");
    let path = dir.join("s3.txt");
    std::fs::write(&path, "r: (1 2 3)\ns: (1 2)\n").unwrap();
    let out = grpalg(&["group", "info", "--group", path.to_str().unwrap(), "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 6"), "{text}");
    let out = grpalg(&["shoda", "list", "--group", path.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("shoda.json")).unwrap()).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn quaternion_idempotents() {
    let out = grpalg(&["idempotents", "--group", "builtin:q8"]);
    assert!(out.status.success());
    let v = json(&out);
    let statuses: Vec<&str> = v["components"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "ok").count(), 4);
    assert_eq!(statuses.iter().filter(|s| **s == "schur_index_not_one").count(), 1);
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = scratch("verify");
    for cmd in ["idempotents", "matrix-units", "units"] {
        let out = grpalg(&[cmd, "--group", "builtin:c7_c3"]);
        assert!(out.status.success(), "{cmd}");
        let path = dir.join(format!("{cmd}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let check = grpalg(&["verify", path.to_str().unwrap(), "--group", "builtin:c7_c3"]);
        assert!(check.status.success(), "{cmd}: {}", String::from_utf8_lossy(&check.stdout));
    }
    let mut v: Value = serde_json::from_slice(&std::fs::read(dir.join("idempotents.json")).unwrap()).unwrap();
    let comp = v["components"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["idempotents"].as_array().is_some_and(|l| l.len() > 1))
        .unwrap();
    comp["idempotents"][0]["coeffs"]["0"] = serde_json::json!(["5", "7"]);
    let bad = dir.join("tampered.json");
    std::fs::write(&bad, serde_json::to_vec(&v).unwrap()).unwrap();
    let out = grpalg(&["verify", bad.to_str().unwrap(), "--group", "builtin:c7_c3"]);
    assert_eq!(out.status.code(), Some(4));
    let err = json(&out);
    assert_eq!(err["error"]["class"], "invariant");
    assert!(err["error"]["message"].as_str().unwrap().contains("orthogonality"));
}

#[test]
fn declared_pairs_file() {
    let dir = scratch("pairs");
    let path = dir.join("pairs.json");
    std::fs::write(&path, r#"{"pairs": [{"H": ["r","s"], "K": ["r","s"]}, {"H": ["r","s"], "K": ["r"]}, {"H": ["r"], "K": []}]}"#).unwrap();
    let out = grpalg(&["wedderburn", "--group", "builtin:s3", "--pairs", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["total_dimension"], 6);
    std::fs::write(&path, r#"{"pairs": [{"H": ["r"], "K": ["r"]}]}"#).unwrap();
    let out = grpalg(&["wedderburn", "--group", "builtin:s3", "--pairs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["reason"], "parameter_invalid");
}

#[test]
fn error_classes() {
    let out = grpalg(&["wedderburn", "--group", "/no/such/file"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["reason"], "parse_error");
    let out = grpalg(&["wedderburn", "--group", "builtin:d16", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = grpalg(&["shoda", "list", "--group", "builtin:d16", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["class"], "budget");
}

#[test]
fn corpus_is_deterministic() {
    let a = grpalg(&["corpus", "run"]);
    let b = grpalg(&["corpus", "run"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["corpus"].as_array().unwrap().len(), 6);
}
