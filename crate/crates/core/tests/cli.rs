mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture_path;

fn netalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netalg")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn example1_check_is_affirmative() {
    let o = netalg(&["check", &path("example1.net")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("generic rank 3 / required 3"), "{s}");
    assert!(s.contains("dim V_o = 2, dim V_c = 2, fiber dim 0"), "{s}");
    assert!(s.contains("result: affirmative (exit 0)"));
}

#[test]
fn json_report_fields() {
    let o = netalg(&["check", &path("example3.net"), "--identifiability", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "netalg");
    assert_eq!(v["identifiability"]["dim_vo"], 2);
    assert_eq!(v["identifiability"]["dim_vc"], 2);
    assert_eq!(v["outcome"]["exit_code"], 0);
    assert!(v["informativity"].is_null());
    assert!(v.get("timings").is_none());
}

#[test]
fn negative_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "product.net",
        r#"{
  "dims": {"n": 2, "m_r": 1, "m_e": 0, "p_y": 1},
  "P": [[1, 0], [{"free": "G", "negated": true}, 1]],
  "Qr": [[{"free": "Q"}], [0]],
  "Ry": [[0, 1]],
  "assumptions": {"input_spectrum_positive_definite": true}
}"#,
    );
    let o = netalg(&["check", &f, "--identifiability"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("not generically locally identifiable"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.net", r#"{"dims": {"n": 1}}"#);
    assert_eq!(netalg(&["check", "/nonexistent/x.net"]).status.code(), Some(2));
    assert_eq!(netalg(&["check", &bad]).status.code(), Some(2));
    assert_eq!(netalg(&["check", &path("example1.net"), "--known", "Z=1"]).status.code(), Some(2));
    assert_eq!(netalg(&["check", &path("example1.net"), "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(netalg(&["frobnicate"]).status.code(), Some(2));
    let dump = dir.path().join("basis.txt");
    let o = netalg(&[
        "check",
        &path("example1.net"),
        "--informativity",
        "--method",
        "graph",
        "--dump-basis",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(netalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn exhausted_budget_exits_three() {
    let o = netalg(&["check", &path("example4.net"), "--identifiability", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn knowns_on_the_command_line() {
    let o = netalg(&["check", &path("example1.net"), "--identifiability", "--known", "Q1=3", "--gc-columns", "r", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identifiability"]["k"], 1);
    assert_eq!(v["identifiability"]["unknowns"], serde_json::json!(["G1"]));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = netalg(&["check", &path("example5.net"), "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn subcommands_run() {
    let o = netalg(&["subnet", &path("example5.net"), "--a-nodes", "w1,w2", "--mode", "combinations", "--check", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("extra predictor rows: wt_w2"));

    let o = netalg(&["rank", &path("example1.net"), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = netalg(&["rank", &path("example1.net"), "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = netalg(&["rank", &path("example1.net"), "--drop-inputs", "e1,e2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    for what in ["pi", "F", "M", "basis"] {
        let o = netalg(&["dump", &path("example1.net"), what]);
        assert_eq!(o.status.code(), Some(0), "{what}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}
