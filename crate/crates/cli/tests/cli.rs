use std::path::PathBuf;
use std::process::{Command, Output};

fn modq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modq")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = modq(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn exact_on_a_path_file() {
    let p4 = scratch("p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let out = stdout(&["exact", "--graph", p4.to_str().unwrap()]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines, ["1/6", "0,1|2,3"]);
}

#[test]
fn score_and_pvalue() {
    assert_eq!(stdout(&["score", "--builder", "Pn:4", "--partition", "0,1|2,3"]).trim(), "1/6");
    assert_eq!(stdout(&["pvalue", "--builder", "Pn:4", "--set", "0,1"]).trim(), "3");
    assert_eq!(stdout(&["positive", "--builder", "Kn:5"]).trim(), "zero");
}

#[test]
fn delta_of_k6_by_removal() {
    let out = stdout(&["delta", "--builder", "Kn:6", "--mode", "remove", "--budget", "4"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "4");
    assert_eq!(lines.iter().filter(|l| l.starts_with('-')).count(), 4);
    let short = stdout(&["delta", "--builder", "Kn:6", "--mode", "remove", "--budget", "3", "--sequential"]);
    assert_eq!(short.trim(), "none within budget 3");
}

#[test]
fn witnesses() {
    let out = stdout(&["witness", "kn", "--n", "6"]);
    assert_eq!(out.lines().last(), Some("1/22"));
    assert_eq!(stdout(&["witness", "bip-plus", "--s", "1", "--t", "1"]).trim(), "not possible");
}

#[test]
fn transition_is_reproducible() {
    let args = ["transition", "--n", "150", "--c", "1.5", "--model", "gnm", "--seeds", "1..4"];
    let first = stdout(&args);
    assert_eq!(first.lines().count(), 5);
    assert_eq!(first, stdout(&args));
    let csv = scratch("t.csv", &first);
    let summary = stdout(&["summarize", csv.to_str().unwrap()]);
    assert!(summary.starts_with("n=150 c=1.5 mode=gnm rows=4"), "{summary}");
}

#[test]
fn exit_codes() {
    let header_only = scratch("h.csv", &(modq::dense::CSV_HEADER.to_string() + "\n"));
    assert_eq!(modq(&["summarize", header_only.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(modq(&["exact", "--builder", "Pn:13"]).status.code(), Some(4));
    assert_eq!(modq(&["summarize", "/definitely/not/here.csv"]).status.code(), Some(6));
    assert_eq!(modq(&["exact", "--builder", "Qx:3"]).status.code(), Some(1));
}
