use std::path::Path;
use std::process::{Command, Output};

fn exactldl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactldl")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIDIAG: &str = "%%MatrixMarket matrix coordinate integer symmetric
4 4 6
1 1 2
2 1 1
2 2 0
3 2 1
4 3 5
4 4 1
";

const OTHER: &str = "%%MatrixMarket matrix coordinate integer symmetric
4 4 4
1 1 3
2 1 1
3 3 1
4 4 1
";

#[test]
fn factor_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "a.mtx", TRIDIAG);
    let out = dir.path().join("f.json").to_string_lossy().into_owned();
    let o = exactldl(&["factor", "--field", "gfp:7", "--matrix", &m, "--mode", "dense-ldl", "--verify", "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["rank"], 4);
    assert_eq!(report["verify"]["ok"], true);
    let o = exactldl(&["verify", "--field", "gfp:7", "--matrix", &m, "--factors", &out]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_against_wrong_matrix_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "a.mtx", TRIDIAG);
    let other = write(dir.path(), "b.mtx", OTHER);
    let out = dir.path().join("f.json").to_string_lossy().into_owned();
    let o = exactldl(&["factor", "--field", "rational", "--matrix", &m, "--mode", "dense-ldl", "--out", &out]);
    assert!(o.status.success());
    let o = exactldl(&["verify", "--field", "rational", "--matrix", &other, "--factors", &out]);
    assert_eq!(o.status.code(), Some(2));
    let rep: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["ok"], false);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "a.mtx", TRIDIAG);
    let o = exactldl(&["factor", "--field", "gf3", "--matrix", &m, "--mode", "dense-ldl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown field"));
    let o = exactldl(&["factor", "--field", "gf2", "--matrix", &m, "--mode", "sparse-ldl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--greedy-td"));
    let o = exactldl(&["factor", "--mode", "dense-ldl"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "bad.mtx", "%%MatrixMarket matrix coordinate integer general\n2 2 1\n1 x 3\n");
    let o = exactldl(&["factor", "--field", "gf2", "--matrix", &m, "--mode", "dense-lu"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn entry_outside_field() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "q.mtx", "%%MatrixMarket matrix coordinate rational general\n1 1 1\n1 1 1/2\n");
    let o = exactldl(&["factor", "--field", "gfp:7", "--matrix", &m, "--mode", "dense-lu"]);
    assert_eq!(o.status.code(), Some(1));
    let o = exactldl(&["factor", "--field", "rational", "--matrix", &m, "--mode", "dense-lu", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn stats_report_counts_ops() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "a.mtx", TRIDIAG);
    let o = exactldl(&["factor", "--field", "gfp:7", "--matrix", &m, "--mode", "sparse-ldl", "--greedy-td", "--stats"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["ops"]["mul"].as_u64().unwrap() > 0);
    assert_eq!(report["peel_count"], 0);
}
