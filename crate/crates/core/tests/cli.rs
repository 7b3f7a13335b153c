use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_majoritarian"))
}

fn write_profile(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("majoritarian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compare_prints_margin_and_verdict() {
    let f = write_profile("unanimous.txt", "3\na b c\na b c\na b c\n");
    let out = bin().args(["compare"]).arg(&f).args(["a,b,c", "b,c,a"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "+1 FirstWins");
}

#[test]
fn eval_reports_empty_popular_set() {
    let f = write_profile("eval.txt", "3\na b c\na b c\na b c\n");
    let out = bin().arg("eval").arg(&f).args(["--rules", "popular,po"]).output().unwrap();
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(text.contains("popular: EMPTY"), "{text}");
    assert!(text.contains("po: 6 assignments"), "{text}");
}

#[test]
fn equiv_detects_rotation() {
    let a = write_profile("a.txt", "3\na b c\na c b\nb a c\n");
    let b = write_profile("b.txt", "3\nb c a\nb a c\nc b a\n");
    let out = bin().arg("equiv").arg(&a).arg(&b).output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("rotation-equivalent:"), "{text}");
    assert!(text.contains("same majority graph:"), "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0].ends_with("yes"), lines[1].ends_with("yes"));
}

#[test]
fn enumerate_small_universe() {
    let out = bin().args(["enumerate", "--n", "3", "--stats", "tc-sizes"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("top-cycle sizes: {1, 2, 4, 6}"));
}

#[test]
fn refuses_long_runs_and_large_universes() {
    let out = bin().args(["enumerate", "--n", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().args(["sample", "--n", "9", "--count", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_exits_with_two() {
    let f = write_profile("bad.txt", "3\na b c\na b\n");
    let out = bin().arg("tc").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
