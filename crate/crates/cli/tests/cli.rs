use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const WITNESS: &str = "K???WWpT]Kt\\";

fn loclin(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_loclin"));
    cmd.args(args).env_remove("LOCLIN_BUDGET_NODES");
    cmd
}

fn run(args: &[&str]) -> Output {
    loclin(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = loclin(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_reports_properties_per_line() {
    let o = run_stdin(&["check", "-"], ">>graph6<<Bw\n\nCr\n");
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["line"], 1);
    assert_eq!(rows[0]["locally_linear"], true);
    assert_eq!(rows[0]["hamiltonian"], true);
    assert_eq!(rows[0]["certificate"]["kind"], "cycle");
    // C4 has independent neighborhoods.
    assert_eq!(rows[1]["line"], 3);
    assert_eq!(rows[1]["locally_linear"], false);
    assert_eq!(rows[1]["invariants"]["precondition"]["pass"], false);
}

#[test]
fn check_rejects_malformed_line() {
    let o = run_stdin(&["check", "-"], "Bw\nB~~\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn check_csv_has_header() {
    let o = run_stdin(&["--format", "csv", "check", "-"], "Bw\n");
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(&r.headers().unwrap()[1], "graph6");
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][1], "Bw");
}

#[test]
fn verify_min_size_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "verify", "2", "--chain-limit", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let report = read_json(&dir.path().join("report.json"));
    for key in ["run", "constraints_hash", "outcome", "report"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["outcome"]["pass"], true);
    assert_eq!(report["constraints_hash"].as_str().unwrap().len(), 64);
    assert_eq!(report["report"]["min_witness_size"], 24);
    assert_eq!(report["report"]["chain"].as_array().unwrap().len(), 4);

    let witnesses = std::fs::read_to_string(dir.path().join("witnesses.g6")).unwrap();
    assert!(witnesses.lines().any(|l| l == WITNESS));
    assert!(dir.path().join("summary.csv").exists());
    assert!(dir.path().join("chain.g6").exists());
}

#[test]
fn constraints_hash_is_stable() {
    let hash = |dir: &Path| {
        let o = run(&["--out", dir.to_str().unwrap(), "search", "--n", "8"]);
        assert_eq!(o.status.code(), Some(0));
        read_json(&dir.join("report.json"))["constraints_hash"].clone()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(hash(a.path()), hash(b.path()));
}

#[test]
fn construct_extends_witness() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.g6");
    std::fs::write(&seed, format!("{WITNESS}\n")).unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "construct",
        seed.to_str().unwrap(),
        "--steps",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(std::fs::read_to_string(out.join("chain.g6")).unwrap().lines().count(), 3);

    let zero = run(&["construct", seed.to_str().unwrap(), "--steps", "0"]);
    assert_eq!(zero.status.code(), Some(0));
    assert!(stdout(&zero).trim().is_empty());
}

#[test]
fn construct_refuses_hamiltonian_seed() {
    let o = run(&["construct", "Bw", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_agrees_on_small_orders() {
    let o = run(&["oracle", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().split_whitespace().map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(last, ["6", "3", "3"]);
}

#[test]
fn budget_exhaustion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = loclin(&["--out", dir.path().to_str().unwrap(), "search", "--n", "10"])
        .env("LOCLIN_BUDGET_NODES", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let report = read_json(&dir.path().join("report.json"));
    assert_eq!(report["outcome"]["status"], "budget_exhausted");
}

#[test]
fn rejects_zero_workers() {
    let o = run(&["--workers", "0", "search", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}
