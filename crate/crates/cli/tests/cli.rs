use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const EXAMPLE: &str = "rule p <- : 4 4\nrule q <- p : -1 0\nrule r <- p,q : 0 0\n";
const SELF_LOOP: &str = "rule p <- : 0 0\nrule p <- p : 1 0\n";

fn bvass(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bvass"))
        .args(args)
        .env_remove("BVASS_LOG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn model_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn reach_prints_the_line_format() {
    let o = bvass(&["reach", "-"], Some(EXAMPLE));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("# model "), "{out}");
    for line in ["linear p : 4 4", "linear q : 3 4", "linear r : 7 8"] {
        assert!(out.lines().any(|l| l == line), "{out}");
    }
}

#[test]
fn reach_json_is_deterministic_and_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = model_file(dir.path(), "loop.bvass", SELF_LOOP);
    let out = dir.path().join("loop.json");
    let o = bvass(&["reach", &m, "--json", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let a = std::fs::read_to_string(&out).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["reach"][0]["state"], "p");
    let b = stdout(&bvass(&["reach", &m, "--json"], None));
    assert_eq!(a, b);
}

#[test]
fn reach_validate_and_stats() {
    let o = bvass(&["reach", "-", "--validate", "--stats", "--order", "lifo"], Some(SELF_LOOP));
    assert_eq!(code(&o), 0);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("nodes_created"), "{err}");
}

#[test]
fn member_answers_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = model_file(dir.path(), "ex.bvass", EXAMPLE);
    let yes = bvass(&["member", &m, "r", "7", "8"], None);
    assert_eq!(code(&yes), 0);
    assert_eq!(stdout(&yes).trim(), "reachable: linear r : 7 8");
    let no = bvass(&["member", &m, "q", "4", "4"], None);
    assert_eq!(code(&no), 3);
    assert_eq!(stdout(&no).trim(), "not reachable");
}

#[test]
fn member_from_a_stored_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let m = model_file(dir.path(), "loop.bvass", SELF_LOOP);
    let stored = stdout(&bvass(&["reach", &m], None));
    assert_eq!(code(&bvass(&["member", &m, "p", "9", "0", "--from", "-"], Some(&stored))), 0);
    assert_eq!(code(&bvass(&["member", &m, "p", "0", "1", "--from", "-"], Some(&stored))), 3);
    // A presentation of another model is refused.
    let other = model_file(dir.path(), "ex.bvass", EXAMPLE);
    assert_eq!(code(&bvass(&["member", &other, "p", "4", "4", "--from", "-"], Some(&stored))), 2);
}

#[test]
fn oracle_dumps_the_box() {
    let o = bvass(&["oracle", "-", "--box", "3"], Some(SELF_LOOP));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p 0 0\np 1 0\np 2 0\np 3 0\n");
    let j = bvass(&["oracle", "-", "--box", "3", "--json"], Some(SELF_LOOP));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["saturated"], false);
    assert_eq!(doc["configs"].as_array().unwrap().len(), 4);
}

#[test]
fn check_accepts_the_computed_presentation() {
    let o = bvass(&["check", "-"], Some(EXAMPLE));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["ok"], true);
}

#[test]
fn check_rejects_a_corrupted_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let m = model_file(dir.path(), "loop.bvass", SELF_LOOP);
    let mut stored = stdout(&bvass(&["reach", &m], None));
    stored.push_str("linear p : 0 1\n");
    let o = bvass(&["check", &m, "--from", "-", "--box-max", "40"], Some(&stored));
    assert_eq!(code(&o), 5);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["soundness"]["inconclusive"][0]["point"], serde_json::json!([0, 1]));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&bvass(&["reach", "/nonexistent/model"], None)), 2);
    assert_eq!(code(&bvass(&["reach", "-"], Some("rule p <- : x 1\n"))), 2);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&bvass(&["frobnicate"], None)), 1);
    assert_eq!(code(&bvass(&["member", "-", "p", "1"], None)), 1);
    assert_eq!(code(&bvass(&["check", "-", "--box", "30", "--box-max", "20"], Some(SELF_LOOP))), 1);
}

#[test]
fn resource_limits_exit_4() {
    let model = "rule p <- : 0 2\nrule p <- p : 1 -2\nrule p <- p : -2 2\nrule p <- p : 0 -1\nrule p <- p : 2 1\n";
    let o = bvass(&["reach", "-", "--max-nodes", "10"], Some(model));
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8(o.stderr).unwrap().contains("partial stats"));
}
