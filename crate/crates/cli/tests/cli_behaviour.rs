//! Exit codes, output files and report envelopes of the command-line tool.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_gamma-points");

fn run(out: &Path, args: &[&str]) -> i32 {
    Command::new(BIN)
        .arg("--out")
        .arg(out)
        .args(args)
        .status()
        .expect("binary runs")
        .code()
        .expect("exit code")
}

fn report(out: &Path, name: &str) -> Value {
    let text = std::fs::read_to_string(out.join(format!("{name}.json"))).expect("report written");
    serde_json::from_str(&text).expect("valid JSON")
}

#[test]
fn eval_writes_envelope() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["eval", "--z", "0.5"]), 0);
    let v = report(dir.path(), "eval");
    assert_eq!(v["manifest"]["subcommand"], "eval");
    assert_eq!(v["pass"], true);
    assert_eq!(v["body_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["no-such-command"]), 1);
    assert_eq!(run(dir.path(), &["census", "--n", "3", "--D", "2"]), 1);
}

#[test]
fn census_outputs() {
    let dir = tempfile::tempdir().unwrap();
    // 1/Γ(6) = 1/120 is not a rational of height <= 50, which is still
    // within the theorem bound.
    assert_eq!(run(dir.path(), &["census", "--n", "6", "--D", "50"]), 0);
    let v = report(dir.path(), "census");
    assert_eq!(v["body"]["N"], 2);
    assert_eq!(v["body"]["N_prime"], 1);
    assert!(dir.path().join("census.csv").exists());
    assert!(dir.path().join("census_scatter.dat").exists());
}

#[test]
fn failing_check_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(
        dir.path(),
        &[
            "bp-check", "--d", "1", "--T", "3", "--A", "1", "--Z", "1", "--M", "0", "--H", "1",
        ],
    );
    // M = 0 makes the left-hand side vanish, so the condition fails.
    assert_eq!(code, 2);
    assert_eq!(report(dir.path(), "bp-check")["pass"], false);
}
