use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freefactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("freefactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn antipodality_answers() {
    let o = run(&["antipodal", "-n", "3", "--factor", "a,b", "--word", "cac"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "antipodal: false\n");
    let o = run(&["antipodal", "-n", "3", "--factor", "a,b", "--word", "bcaB"]);
    assert_eq!(stdout(&o), "antipodal: true\n");
    let o = run(&[
        "antipodal",
        "--mode",
        "of",
        "--factor",
        "a,b",
        "--word",
        "Abca",
    ]);
    assert_eq!(stdout(&o), "antipodal: true\n");
}

#[test]
fn word_syntax() {
    let o = run(&["member", "a", "a1 A1"]);
    assert_eq!(stdout(&o), "member: true\n");
    let o = run(&["member", "-n", "3", "a", "d"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("parse error at column 1"),
        "{}",
        stderr(&o)
    );
    let o = run(&["factor", "-n", "3", "aB,a?"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 5"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["member"]).status.code(), Some(2));
    assert_eq!(
        run(&["apartment", "--example", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["fake7", "-n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["apartment", "--basis", "aa,b,c"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_failures_exit_one() {
    let o = run(&["apartment", "--example", "fig1-right"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] opposite faces: vertex 3"));
    let o = run(&["apartment", "--example", "fig1-left"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("standard: false"));
    assert!(stdout(&o).contains("[pass] injective"));
    let o = run(&["apartment", "--basis", "ab,b,c"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("standard: true"));
}

#[test]
fn paper_examples() {
    let o = run(&["ex68"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict fake"));
    let o = run(&["fake7", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["sticks"]);
    assert!(stdout(&o).contains("12 sticks"));
    let o = run(&["sticks", "--mode", "of"]);
    assert!(stdout(&o).contains("6 sticks"));
    let o = run(&["snops", "-n", "4"]);
    assert!(stdout(&o).contains("16 snops"));
    let o = run(&["supersticks", "--mode", "of"]);
    assert!(stdout(&o).contains("8 supersticks"));
    let o = run(&["overlap", "--mode", "of", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[abb]"));
}

#[test]
fn graph_files_round_trip() {
    let o = run(&["fold", "-n", "2", "ab,aB"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("fold.txt");
    std::fs::write(&path, stdout(&o)).unwrap();
    let from_file = run(&["core", "-n", "2", "--graph", path.to_str().unwrap()]);
    let from_words = run(&["core", "-n", "2", "ab,aB"]);
    assert_eq!(stdout(&from_file), stdout(&from_words));
    let o = run(&["core", "-n", "3", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rank mismatch"));
}

#[test]
fn apartment_files() {
    let path = scratch("ex68.txt");
    std::fs::write(&path, "n=3 mode=of\nbasis: a,b,c\n1,2: a,bacAbaCAB\n").unwrap();
    let o = run(&[
        "apartment",
        "--mode",
        "of",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: fake"));
    std::fs::write(&path, "n=3\n1,2,9: a\n").unwrap();
    let o = run(&["apartment", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["core", "-n", "3", "abC,cA,bbb"][..],
        &["snops", "--json"][..],
        &["ex68", "--json"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn json_and_dot() {
    let o = run(&["intersect", "-n", "2", "--json", "aa,abA", "Ab,baaB"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["based"], "AbbaaBBa");
    let o = run(&["suite", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["checks"].as_array().unwrap().len(), 11);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("cube.dot");
    let o = run(&["snops", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("graph"));
    let o = run(&["member", "a", "a", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["dot", "-n", "2", "a,baB"]);
    assert!(stdout(&o).starts_with("digraph"));
}
