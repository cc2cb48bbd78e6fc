use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_platjones"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_unknot() {
    let o = run(&["eval", &corpus("unknot.braid")]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.starts_with("jones:") && l.trim_end().ends_with(" 1")));
}

#[test]
fn eval_trefoil_json() {
    let a = run(&["eval", "--json", &corpus("trefoil_right.braid")]);
    let b = run(&["eval", "--json", &corpus("trefoil_right.braid")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["polynomial"]["text"], "q + q^3 - q^4");
    assert_eq!(v["operator_count"], 3);
    assert_eq!(v["components"], 1);
    assert!(v["p_k"].is_null());
    for key in ["word", "n", "flips", "residual", "program", "deviations"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn oracle_agrees_with_eval_in_t() {
    let o = run(&["oracle", &corpus("trefoil_right.braid")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("t + t^3 - t^4"));
}

#[test]
fn malformed_file_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.braid", "strands=4; g2^3 gx");
    let o = run(&["eval", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("error:"), "{err}");
    assert!(err.chars().any(|c| c.is_ascii_digit()), "{err}");
}

#[test]
fn missing_file_exits_1() {
    let o = run(&["eval", "/nonexistent/x.braid"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cap_mismatch_exits_3() {
    let o = run(&["oracle", &corpus("trefoil_right.braid"), "--flips", "00"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["oracle", &corpus("trefoil_right.braid"), "--flips", "01"]);
    assert!(o.status.success());
}

#[test]
fn bad_flip_string_exits_2() {
    let o = run(&["eval", &corpus("trefoil_right.braid"), "--flips", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", &corpus("trefoil_right.braid"), "--flips", "02"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn narrow_window_exits_4() {
    let o = run(&["eval", &corpus("fourteen_crossing.braid"), "--window=-2,2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn low_root_order_exits_5() {
    let o = run(&["prob", &corpus("hopf.braid"), "--root-order", "2"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn prob_reports_probability() {
    let o = run(&["prob", "--json", &corpus("hopf.braid"), "--root-order", "7"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = v["p_k"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&p));
}

#[test]
fn oracle_crossing_cap_exits_6() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "big.braid", "strands=4; g2^21");
    let o = run(&["oracle", &f]);
    assert_eq!(o.status.code(), Some(6));
    let o = run(&["oracle", &f, "--max-crossings", "21"]);
    assert!(o.status.success());
}

#[test]
fn verify_corpus_and_random() {
    let o = run(&["verify", &corpus("")]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["verify", "--random", "50", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_empty_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
}
