use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strongideal")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const DEGENERATE: &str = r#"{"name": "deg", "dim": 2, "basis": ["x", "y"], "brackets": [],
    "metric": [{"x": "x", "y": "x", "value": "1"}]}"#;

#[test]
fn ann_report_for_e2() {
    let v = json(&["ann", "--catalog", "e2_flat", "--format", "json"]);
    assert_eq!(v["case"], "NON_ISOTROPIC");
    assert_eq!(v["ann_r_dim"], 1);
    assert_eq!(v["ann_dim"], 0);
}

#[test]
fn decompose_so3_pair() {
    let v = json(&["decompose", "--catalog", "so3_x_so3", "--format", "json"]);
    assert_eq!(v["factor_dims"], serde_json::json!([3, 3]));
    assert_eq!(v["orthogonal"], true);
    assert_eq!(v["case"], "ANN_R_ZERO");
}

#[test]
fn classify_einstein_constant() {
    let v = json(&["classify", "--catalog", "sl2_killing", "--format", "json"]);
    assert_eq!(v["einstein"], "-1/4");
    assert_eq!(v["biinvariant"], true);
}

#[test]
fn text_output_names_the_algebra() {
    let out = run(&["ricci", "--catalog", "heisenberg3_euclid"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("algebra: heisenberg3_euclid\n"));
    assert!(text.contains("-1/2"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.json", "{\"name\": \"x\", \"dim\": 1");
    let deg = write(&dir, "deg.json", DEGENERATE);
    assert_eq!(run(&["validate", "--input", &bad]).status.code(), Some(1));
    assert_eq!(run(&["catalog", "show", "missing"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "--input", &deg]).status.code(), Some(2));
    assert_eq!(run(&["connection", "--input", &deg]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.json", "{\n  \"name\": \"x\",\n  \"dim\": oops\n}");
    let out = run(&["validate", "--input", &bad]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn output_file_and_batch_order() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.json", &String::from_utf8(run(&["catalog", "show", "e2_flat", "--format", "json"]).stdout).unwrap());
    let b = write(&dir, "b.json", &String::from_utf8(run(&["catalog", "show", "so3_x_so3", "--format", "json"]).stdout).unwrap());
    let out = dir.path().join("out.json");
    let status = run(&["ann", "--input", &a, &b, "--format", "json", "--output", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["algebra"].as_str().unwrap()).collect();
    assert_eq!(names, ["e2_flat", "so3_x_so3"]);
}

#[test]
fn catalog_show_round_trips_through_input() {
    let dir = tempfile::tempdir().unwrap();
    let shown = run(&["catalog", "show", "n23_quadratic", "--format", "json"]).stdout;
    let path = write(&dir, "n23.json", &String::from_utf8(shown).unwrap());
    let from_file = json(&["decompose", "--input", &path, "--format", "json"]);
    let from_catalog = json(&["decompose", "--catalog", "n23_quadratic", "--format", "json"]);
    assert_eq!(from_file, from_catalog);
}

#[test]
fn recheck_accepts_own_output_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["decompose", "--catalog", "so3_x_so3", "--format", "json"]).stdout;
    let good = write(&dir, "good.json", &String::from_utf8(out.clone()).unwrap());
    assert_eq!(run(&["decompose", "--catalog", "so3_x_so3", "--recheck", &good]).status.code(), Some(0));

    let mut v: Value = serde_json::from_slice(&out).unwrap();
    v["certificate"]["steps"][0]["idempotent"][0][0] = Value::from("5");
    let bad = write(&dir, "bad.json", &v.to_string());
    assert_eq!(run(&["decompose", "--catalog", "so3_x_so3", "--recheck", &bad]).status.code(), Some(3));
}

#[test]
fn seed_is_reported() {
    let v = json(&["decompose", "--catalog", "remark38", "--format", "json", "--seed", "0x10"]);
    for ev in v["certificate"]["evidence"].as_array().unwrap() {
        assert_eq!(ev["kind"], "SEARCH_EXHAUSTED");
        assert_eq!(ev["seed"], "16");
        assert_eq!(ev["random_tried"], 64);
    }
}
