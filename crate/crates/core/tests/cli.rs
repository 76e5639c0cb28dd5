//! The `contexture` binary: subcommands, exit codes and stable output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contexture"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_exit_codes() {
    let pr = data("pr_box.json");
    let o = run(&["analyze", pr.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Delta_min = 1 (1.000000)"));

    let o = run(&["analyze", data("signaling.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("A1: Pr[+1] differs by 1/5"));

    let o = run(&["analyze", data("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn analyze_json_is_a_scenario_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", data("epr_seven_tenths.json").to_str().unwrap(), "--json", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"value\": \"2/5\""));
    let again = dir.path().join("again.json");
    std::fs::write(&again, &text).unwrap();
    let o2 = run(&["analyze", again.to_str().unwrap(), "--json", "--witness"]);
    assert_eq!(stdout(&o2), text);
}

#[test]
fn check_and_derive() {
    assert_eq!(run(&["check", data("lg_classical.json").to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["check", data("signaling.json").to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["derive", "generic"]).status.code(), Some(2));
    let o = run(&["derive", "lg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equivalent to the target Delta bounds: yes"));
}

#[test]
fn random_is_deterministic_across_thread_counts() {
    let args = ["random", "--kind", "epr", "--count", "40", "--seed", "9", "--denominator-bound", "12", "--json"];
    let one = bin().args(args).env("CONTEXTURE_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("CONTEXTURE_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run(&["random", "--kind", "generic", "--count", "1", "--seed", "0"]).status.code(), Some(2));
}
