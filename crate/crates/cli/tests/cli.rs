use std::process::{Command, Output};

use serde_json::Value;

fn tridiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridiag")).args(args).output().expect("spawn tridiag")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn checks<'a>(report: &'a Value, prefix: &str) -> Vec<&'a Value> {
    report["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with(prefix)).collect()
}

#[test]
fn hahn_n1_eigenvalues() {
    let o = tridiag(&["verify", "hahn", "--alpha", "0", "--beta", "0", "--tau0", "0", "--N", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["schema_version"], "1");
    let eig = checks(&report, "hahn.eigenfunction");
    let details: Vec<&str> = eig.iter().map(|c| c["detail"].as_str().unwrap()).collect();
    assert_eq!(details, ["eigenvalue -1", "eigenvalue -3"]);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn connection_table_n0() {
    let o = tridiag(&["table", "connection", "--N", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "n,k,R,dual_eigenvalue\n0,0,1/1,0/1\n");
}

#[test]
fn jacobi_recurrence_rows() {
    let o = tridiag(&["table", "recurrence", "--family", "jacobi", "--alpha", "0", "--beta", "0", "--nmax", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,b,u\n0,1/2,0/1\n1,1/2,1/12\n");
    let o = tridiag(&["table", "recurrence", "--family", "jacobi", "--alpha", "0", "--beta", "0", "--nmax", "1"]);
    let t: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(t["rows"][1][2], serde_json::json!({"num": "1", "den": "12"}));
}

#[test]
fn malformed_rational_names_flag() {
    let o = tridiag(&["verify", "tridiag", "--beta", "1/x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--beta"), "{}", stderr(&o));
}

#[test]
fn pole_names_flags() {
    let o = tridiag(&["verify", "tridiag", "--alpha=-3/2", "--beta=-1/2"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("--alpha") && e.contains("--beta"), "{e}");
}

#[test]
fn unknown_suite_and_misplaced_tolerance() {
    let o = tridiag(&["verify", "laguerre"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("laguerre"));
    let o = tridiag(&["verify", "hahn", "--tolerance", "1/10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--tolerance"));
}

#[test]
fn failing_checks_exit_one() {
    // Off the F(1) = 0 locus the raw coefficient ratio is shifted by a boundary term.
    let o = tridiag(&["verify", "koornwinder", "--trials", "1", "--seed", "3", "--tolerance", "1/1000"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn deterministic_given_seed() {
    let args = ["verify", "racah-wilson", "--trials", "4", "--seed", "11", "--format", "csv"];
    let a = tridiag(&args);
    let b = tridiag(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("name,trial,status,anchor,detail\n"));
}

#[test]
fn fit_recovers_jacobi_constants() {
    let o = tridiag(&["fit", "constants", "--preset", "jacobi", "--alpha", "1/2", "--beta", "1/3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("c2,-85/36,fixed"));
}

#[test]
fn out_writes_file() {
    let path = std::env::temp_dir().join(format!("tridiag-cli-{}.csv", std::process::id()));
    let o = tridiag(&["table", "connection", "--N", "0", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,k,R,dual_eigenvalue\n0,0,1/1,0/1\n");
    std::fs::remove_file(path).unwrap();
}
