use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand-lab"))
        .args(args)
        .env_remove("GELFAND_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Non-comment lines of a CSV output.
fn body(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with("# ")).map(str::to_string).collect()
}

#[test]
fn involution_table() {
    let o = lab(&["table", "involutions", "--nmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let counts: Vec<String> =
        body(&stdout(&o)).iter().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(counts, ["1", "1", "2", "4", "10", "26", "76", "232", "764", "2620", "9496"]);
}

#[test]
fn measure_table_rows() {
    let o = lab(&["table", "measure", "gelfand", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&stdout(&o)), ["partition,numerator,denominator", "3,1,4", "2 1,1,2", "1 1 1,1,4"]);
}

#[test]
fn transposition_expectation_vanishes() {
    let o = lab(&["table", "expectation", "2", "--nmax", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&stdout(&o));
    assert_eq!(rows.len(), 42);
    assert!(rows.iter().skip(1).all(|r| r.split(',').nth(1) == Some("0")));
}

#[test]
fn outputs_carry_version_and_config() {
    let text = stdout(&lab(&["table", "involutions", "--nmax", "3"]));
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# gelfand-lab 0.1.0 ("));
    let config = lines.next().unwrap().strip_prefix("# config ").unwrap();
    let v: serde_json::Value = serde_json::from_str(config).unwrap();
    assert_eq!(v["command"], "table involutions");
    assert_eq!(v["nmax"], 3);
}

#[test]
fn exact_suite_passes() {
    let o = lab(&["verify", "exact", "--nmax", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5/5 checks passed"));
}

#[test]
fn algebra_suite_reproduces_power_coefficients() {
    let o = lab(&["verify", "algebra"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("top coefficients 1/24/48"));
}

#[test]
fn oracle_suite_passes() {
    let o = lab(&["verify", "oracle", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rsk pushforward gelfand n=6"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(lab(&["verify", "exact", "--nmax", "13"]).status.code(), Some(64));
    assert_eq!(lab(&["verify", "nonsense"]).status.code(), Some(64));
    assert_eq!(lab(&["sample", "--n", "0"]).status.code(), Some(64));
    assert_eq!(lab(&["sample", "--n", "20000"]).status.code(), Some(64));
    assert_eq!(lab(&["sample", "--k", "1"]).status.code(), Some(64));
    assert_eq!(lab(&["table", "measure", "gelfand", "41"]).status.code(), Some(64));
    assert_eq!(lab(&["table", "expectation", "3,x"]).status.code(), Some(64));
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn same_seed_gives_identical_csv_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_s = out.to_str().unwrap();
    let args = ["sample", "--n", "200", "--trials", "40", "--seed", "11", "--out", out_s, "--format", "csv"];
    let first = lab(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(first.status.code(), Some(0));
    let a = fs::read(out.join("gelfand_n200.csv")).unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_gelfand-lab"))
        .args(args)
        .env("GELFAND_LAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(second.status.code(), Some(0));
    let b = fs::read(out.join("gelfand_n200.csv")).unwrap();
    assert_eq!(a, b);
    assert!(!out.join("summary.json").exists());
    assert!(!out.join("gelfand_n200.svg").exists());
}

#[test]
fn both_measures_report_variance_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lab(&[
        "sample", "--measure", "gelfand,plancherel", "--n", "200", "--trials", "200", "--seed", "3", "--k", "2,3",
        "--out", out,
    ]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(Path::new(out).join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["trials"], 200);
    assert!(summary["version"].as_str().unwrap().starts_with("0.1.0"));
    let ratios = summary["variance_ratio"].as_array().unwrap();
    assert_eq!(ratios.len(), 2);
    assert_eq!(ratios[0]["observable"], "X2");
    assert_eq!(ratios[0]["target"], 2.0);
    assert_eq!(summary["runs"].as_array().unwrap().len(), 2);
    assert!(summary["runs"][0]["clt"]["entries"].is_array());

    let csv = fs::read_to_string(Path::new(out).join("plancherel_n200.csv")).unwrap();
    assert!(csv.starts_with("# gelfand-lab"));
    let rows = body(&csv);
    assert!(rows[0].starts_with("trial,n,measure,X2,X3,supdist"));
    assert_eq!(rows.len(), 201);

    let svg = fs::read_to_string(Path::new(out).join("gelfand_n200.svg")).unwrap();
    assert!(svg.contains("# config {"));
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn short_runs_skip_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["sample", "--n", "50", "--trials", "10", "--out", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no verdicts"));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert!(summary["runs"][0]["clt"].is_null());
}

#[test]
fn io_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("occupied");
    fs::write(&blocker, "x").unwrap();
    let o = lab(&["sample", "--n", "20", "--trials", "2", "--out", blocker.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(74));
    assert!(String::from_utf8_lossy(&o.stderr).contains("occupied"));
}
