//! End-to-end tests of the `fdt` binary: exit codes, output schemas, and
//! byte-stability of the JSON records.

use std::path::Path;
use std::process::{Command, Output};

fn fdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_json_record() {
    let out = fdt(&["solve", "--mu-r", "2/5", "--mu-t", "2/5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["region"], "R2");
    assert_eq!(v["fdt_lp"], "2/9");
    assert_eq!(v["fdt_closed_form"], "2/9");
    assert_eq!(v["feasible"], true);
    assert_eq!(v["ratios"].as_object().unwrap().len(), 13);
}

#[test]
fn solve_json_is_byte_stable() {
    let args = ["solve", "--mu-r", "0.4", "--mu-t", "2/5", "--format", "json"];
    let a = fdt(&args);
    let b = fdt(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // Decimal input converts exactly to the same record as the fraction.
    let c = fdt(&["solve", "--mu-r", "2/5", "--mu-t", "2/5", "--format", "json"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn solve_degenerate_corner() {
    let out = fdt(&["solve", "--mu-r", "1", "--mu-t", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["fdt_lp"], "0");
}

#[test]
fn solve_infeasible_budget_exits_2() {
    let out = fdt(&["solve", "--mu-r", "0", "--mu-t", "1/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("mu_r + 3*mu_t >= 1"));
}

#[test]
fn bad_flag_value_exits_1() {
    let out = fdt(&["solve", "--mu-r", "bogus", "--mu-t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--mu-r"));

    let out = fdt(&["solve", "--mu-r", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_grid_rows() {
    let dir = tempdir();
    let path = dir.join("sweep.csv");
    let out = fdt(&["sweep", "--step", "1/3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("mu_r,mu_t,region,fdt"));
    assert!(csv.contains("1/3,1/3,R5,7/27"));
    assert!(csv.contains("1,1,R1,0"));
    assert!(!csv.contains("\n0,0,"));
}

#[test]
fn sweep_unwritable_path_exits_1() {
    let out = fdt(&["sweep", "--step", "1/3", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_r5_corner() {
    let out = fdt(&[
        "simulate", "--mu-r", "1/3", "--mu-t", "1/3", "--files", "3", "--file-size", "auto",
        "--seed", "7",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["measured_fdt"], "7/27");
    assert_eq!(v["decode_ok"], serde_json::json!([true, true, true]));
    assert_eq!(v["phases"][0]["channel"], "hybrid-x-multicast");
}

#[test]
fn simulate_full_caches_needs_no_delivery() {
    let out = fdt(&["simulate", "--mu-r", "1", "--mu-t", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["measured_fdt"], "0");
    assert_eq!(v["phases"].as_array().unwrap().len(), 0);
}

#[test]
fn simulate_tx_only_broadcast() {
    let out = fdt(&["simulate", "--mu-r", "0", "--mu-t", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let phases = v["phases"].as_array().unwrap();
    assert_eq!(phases.len(), 1);
    assert_eq!(phases[0]["channel"], "miso-broadcast");
    assert_eq!(v["measured_fdt"], "1/3");
}

#[test]
fn simulate_indivisible_file_size_exits_3() {
    let out = fdt(&["simulate", "--mu-r", "2/5", "--mu-t", "2/5", "--file-size", "7"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("multiple"));
}

#[test]
fn verify_coarse_grid_passes() {
    let out = fdt(&["verify", "--step", "1/2", "--oracle-samples", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all checks passed"));
}

#[test]
fn compare_csv_rows() {
    let dir = tempdir();
    let path = dir.join("compare.csv");
    let out = fdt(&["compare", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("mu_r,ours_at_mu_t_1,baseline\n"));
    assert!(csv.contains("1/3,2/9,1/3"));
    assert!(csv.contains("2/3,1/9,1/9"));
    assert!(csv.contains("1,0,0"));
    assert!(csv.contains("mu_t,tx_only_fdt"));
    assert!(csv.contains("1/2,17/36"));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fdt-cli-test-{}", std::process::id()));
    if !Path::new(&dir).exists() {
        std::fs::create_dir_all(&dir).unwrap();
    }
    dir
}
