use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn graver_of_four_five_six_seven() {
    let o = toric(&["graver", &data("a4567.mat")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 29);
    assert!(lines.contains(&"1 3 -2 -1"), "{lines:?}");
}

#[test]
fn inline_matrix_text() {
    let o = toric(&["count", "graver", "1 4\\n4 5 6 7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "29");
}

#[test]
fn glm_build_reproduces_the_golden() {
    let o = toric(&["glm", "build", &data("spec35.json"), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let golden = std::fs::read_to_string(data("ex35.mat")).unwrap();
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .collect()
    };
    assert_eq!(strip(&stdout(&o)), strip(&golden));
}

#[test]
fn parse_errors_name_the_line() {
    let o = toric(&["graver", "1 3\\n4 5 x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn rejected_hypothesis_exits_two() {
    let o = toric(&["selfdual", "1 3\\n2 2 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not projective"));
    let o = toric(&["count", "ugb", &data("a4567.mat")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repeated_columns_are_folded() {
    let o = toric(&["count", "markov-bases", "1 3\\n2 2 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
    assert!(stderr(&o).contains("--mult 1,0"), "{}", stderr(&o));
}

#[test]
fn robust_verdict_with_witness() {
    let o = toric(&["robust", "1 3\\n2 2 3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("weakly_robust_only"), "{out}");
    assert!(out.contains("witness"));
}

#[test]
fn json_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = toric(&["analyze", &data("ex35.mat"), "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["selfdual"], true);
    assert_eq!(v["counts"]["graver"], "29");
    assert_eq!(v["robustness"]["tag"], "strongly_robust");
    // nothing left behind but the report
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn oracle_cross_checks_pass() {
    let o = toric(&["graver", &data("a4567.mat"), "--oracle", "--box", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("oracle: 29 Graver elements"), "{}", stderr(&o));
    let o = toric(&["markov", "1 3\\n3 4 5", "--oracle", "--box", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("minimal Markov bases"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_error() {
    let o = toric(&["graver", "no_such_file.mat"]);
    assert_eq!(o.status.code(), Some(1));
}
