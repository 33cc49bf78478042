use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qpmut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpmut")).args(args).output().expect("spawn qpmut")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn error_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).expect("json on stderr");
    v["error"].clone()
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn qp_mutate_reproduces_the_example() {
    let a3 = fixture("a3.json");
    let out = qpmut(&["qp", "mutate", "--at", "2", "--in", a3.to_str().unwrap()]);
    assert_eq!(stdout_json(&out), read(&fixture("a3_mu2.json")));
}

#[test]
fn jacobian_dim_of_the_triangle() {
    let tri = fixture("three_cycle.json");
    let out = qpmut(&["jacobian", "dim", "--in", tri.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"dim\":6,\"certified\":true,\"nilpotency\":2}\n");
}

#[test]
fn truncation_flag_overrides_the_document() {
    let zero = fixture("three_cycle_zero.json");
    let out = qpmut(&["jacobian", "certify", "--in", zero.to_str().unwrap(), "--truncation", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert_eq!(v["dims_by_degree"], serde_json::json!([3, 3, 3, 3, 3]));
}

#[test]
fn emitted_documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let tri = fixture("three_cycle.json");
    assert!(qpmut(&["qp", "mutate", "--at", "1", "--in", tri.to_str().unwrap(), "--out", first.to_str().unwrap()])
        .status
        .success());
    // feed the written document back in
    let out = qpmut(&["qp", "premutate", "--at", "1*", "--in", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert!(out.status.success());
    for path in [&first, &second] {
        let v = read(path);
        let again = qpmut(&["qp", "validate", "--in", path.to_str().unwrap()]);
        assert_eq!(stdout_json(&again)["valid"], true);
        let text = std::fs::read_to_string(path).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap() + "\n", text);
    }
}

#[test]
fn pretty_format_indents() {
    let a3 = fixture("a3.json");
    let out = qpmut(&["qp", "validate", "--in", a3.to_str().unwrap(), "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 3);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["reduced"], true);
}

#[test]
fn structured_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"quiver\": ").unwrap();
    let e = error_of(&qpmut(&["qp", "validate", "--in", bad.to_str().unwrap()]));
    assert_eq!(e["code"], "parse");

    let a3 = fixture("a3.json");
    let e = error_of(&qpmut(&["qp", "mutate", "--at", "7", "--in", a3.to_str().unwrap()]));
    assert_eq!(e["code"], "structural");
    assert_eq!(e["datum"], "7");

    let two = fixture("two_cycle.json");
    let e = error_of(&qpmut(&["qp", "premutate", "--at", "1", "--in", two.to_str().unwrap()]));
    assert_eq!(e["code"], "precondition");

    let e = error_of(&qpmut(&["jacobian", "dim", "--in", "/nonexistent/qp.json"]));
    assert_eq!(e["code"], "io");

    let zero = fixture("three_cycle_zero.json");
    let e = error_of(&qpmut(&["jacobian", "ext", "--in", zero.to_str().unwrap(), "--truncation", "4"]));
    assert_eq!(e["code"], "precondition");
}

fn write_rep(dir: &Path, name: &str, fixture_file: &str, index: usize) -> PathBuf {
    let doc = read(&fixture(fixture_file));
    let path = dir.join(name);
    std::fs::write(&path, doc["representations"][index]["rep"].to_string()).unwrap();
    path
}

#[test]
fn representation_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tri = fixture("three_cycle.json");
    let tri = tri.to_str().unwrap();
    let m = write_rep(dir.path(), "m.json", "mutation_example.json", 0);
    let s = write_rep(dir.path(), "s.json", "mutation_example.json", 1);
    let (m, s) = (m.to_str().unwrap(), s.to_str().unwrap());

    assert_eq!(stdout_json(&qpmut(&["rep", "validate", "--qp", tri, "--in", m]))["valid"], true);

    let v = stdout_json(&qpmut(&["rep", "mutate", "--qp", tri, "--in", m, "--at", "2"]));
    assert_eq!(v["premutation"]["rep"]["dims"], serde_json::json!({"1": 1, "2*": 1, "3": 1}));
    assert_eq!(v["premutation"]["rep"]["matrices"]["[ab]"], serde_json::json!([["0"]]));
    assert_eq!(v["reduced"]["qp"]["potential"], serde_json::json!([]));

    let iso = |a: &str, b: &str| stdout_json(&qpmut(&["rep", "iso", "--qp", tri, "--in", a, "--in", b]))["isomorphic"].clone();
    assert_eq!(iso(m, m), true);
    assert_eq!(iso(m, s), false);
    let e = error_of(&qpmut(&["rep", "iso", "--qp", tri, "--in", m]));
    assert_eq!(e["code"], "precondition");

    let f = dir.path().join("f.json");
    std::fs::write(&f, read(&fixture("defect_morphism.json"))["morphism"].to_string()).unwrap();
    let v = stdout_json(&qpmut(&["rep", "morphism-mutate", "--qp", tri, "--in", f.to_str().unwrap(), "--at", "2"]));
    assert_eq!(v["morphism"]["maps"]["2*"], serde_json::json!([["1"]]));

    let family = fixture("three_cycle_indecomposables.json");
    let v = stdout_json(&qpmut(&["rep", "nearly-morita", "--qp", tri, "--in", family.to_str().unwrap(), "--seed", "5"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn coxeter_commands() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    std::fs::write(&base, read(&fixture("coxeter_example.json"))["base"].to_string()).unwrap();
    let base = base.to_str().unwrap();
    let word = "1,2,1,3,1,2,3,1,2,3,2";
    assert_eq!(stdout_json(&qpmut(&["coxeter", "reduced", "--base", base, "--word", word]))["reduced"], true);
    assert_eq!(stdout_json(&qpmut(&["coxeter", "reduced", "--base", base, "--word", "1,1"]))["reduced"], false);
    let v = stdout_json(&qpmut(&["coxeter", "quiver", "--base", base, "--word", word]));
    assert_eq!(v["frozen"], serde_json::json!(["1_4", "3_3", "2_4"]));
    assert_eq!(v["quiver"]["arrows"].as_array().unwrap().len(), 24);
    assert_eq!(v["typing"][3], serde_json::json!({"vertex": "3_1", "type": "3", "position": 4}));
    let v = stdout_json(&qpmut(&["coxeter", "qp", "--base", base, "--word", word]));
    assert_eq!(v["stable_qp"]["potential"].as_array().unwrap().len(), 7);
    let e = error_of(&qpmut(&["coxeter", "quiver", "--base", base, "--word", "1,1"]));
    assert_eq!(e["code"], "precondition");
}

#[test]
fn quiver_commands() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    std::fs::write(&q, r#"{"vertices":["1","2","3"],"arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"3"}]}"#)
        .unwrap();
    let q = q.to_str().unwrap();
    let v = stdout_json(&qpmut(&["quiver", "bmatrix", "--in", q]));
    assert_eq!(v["b"], serde_json::json!([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]));
    let v = stdout_json(&qpmut(&["quiver", "mutate", "--in", q, "--at", "2"]));
    assert_eq!(v["vertices"], serde_json::json!(["1", "2*", "3"]));
    assert_eq!(v["arrows"].as_array().unwrap().len(), 3);
}

#[test]
fn selftest_passes_and_honours_the_fixture_override() {
    let out = qpmut(&["selftest", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("14/14 criteria passed\n"), "{text}");

    let empty = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qpmut"))
        .arg("selftest")
        .env("QPMUT_FIXTURES", empty.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL reduction example: error io"), "{text}");

    let copy = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), copy.path().join(entry.file_name())).unwrap();
    }
    let out = Command::new(env!("CARGO_BIN_EXE_qpmut"))
        .args(["selftest", "--format", "json"])
        .env("QPMUT_FIXTURES", copy.path())
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["passed"], true);
}
