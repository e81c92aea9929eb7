use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn srg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srg"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

/// Column `name` of a CSV as floats.
fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|c| c == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn simulate_is_reproducible_across_thread_counts() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["simulate", "--n", "2000", "--p", "0.5", "--runs", "40", "--times", "0.5,1,2", "--seed", "9"];
    assert!(srg(a.path(), &args).status.success());
    let mut more = args.to_vec();
    more.extend(["--threads", "1"]);
    assert!(srg(b.path(), &more).status.success());
    assert_eq!(read(a.path(), "simulate.csv"), read(b.path(), "simulate.csv"));
    let meta: serde_json::Value = serde_json::from_str(&read(a.path(), "simulate.csv.meta.json")).unwrap();
    assert_eq!(meta["seed"], 9);
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);

    let c = TempDir::new().unwrap();
    let mut other = args.to_vec();
    let last = other.len() - 1;
    other[last] = "10";
    assert!(srg(c.path(), &other).status.success());
    assert_ne!(read(a.path(), "simulate.csv"), read(c.path(), "simulate.csv"));
}

#[test]
fn compare_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("a.csv"), "t,x_mean,x_err\n0.5,1.0,0.1\n1.0,2.0,0.1\n").unwrap();
    std::fs::write(d.join("ref.csv"), "t,x\n0.5,1.0\n1.0,2.0\n").unwrap();
    std::fs::write(d.join("off.csv"), "t,x\n0.5,1.0\n1.0,3.0\n").unwrap();
    std::fs::write(d.join("bad.csv"), "time,y\n0.5,1.0\n").unwrap();
    let sim = d.join("a.csv");
    let run = |reference: &str| {
        let r = d.join(reference);
        srg(d, &["compare", "--sim", sim.to_str().unwrap(), "--theory", r.to_str().unwrap()])
    };

    let same = run("a.csv");
    assert_eq!(same.status.code(), Some(0));
    let verdicts: Vec<serde_json::Value> = serde_json::from_str(&read(d, "compare_verdict.json")).unwrap();
    assert_eq!(verdicts.len(), 2);
    assert!(verdicts.iter().all(|v| v["z"] == 0.0 && v["pass"] == true));

    assert_eq!(run("ref.csv").status.code(), Some(0));
    assert_eq!(run("off.csv").status.code(), Some(1));
    let verdicts: Vec<serde_json::Value> = serde_json::from_str(&read(d, "compare_verdict.json")).unwrap();
    assert_eq!(verdicts[1]["observable"], "x");
    assert_eq!(verdicts[1]["pass"], false);
    assert_eq!(run("bad.csv").status.code(), Some(2));
    assert_eq!(run("missing.csv").status.code(), Some(3));
}

#[test]
fn theory_reports_giant_edge_ratio() {
    let dir = TempDir::new().unwrap();
    let out = srg(dir.path(), &["theory", "--model", "classical", "--times", "0.5,1.625"]);
    assert!(out.status.success());
    let csv = read(dir.path(), "theory.csv");
    assert_eq!(csv.lines().next().unwrap(), "t,p,s,g,c_total,M2,U,E_over_N,edge_ratio");
    let ratio = column(&csv, "edge_ratio");
    assert!(ratio[0].is_nan());
    assert!((ratio[1] - 1.0927078).abs() < 1e-6);
}

#[test]
fn oracle_tree_errors_are_small() {
    let dir = TempDir::new().unwrap();
    let out = srg(dir.path(), &["oracle", "--kind", "trees", "--p", "0.5", "--times", "0.5,0.9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "oracle.csv");
    let k = column(&csv, "k");
    assert_eq!(k.iter().cloned().fold(0.0, f64::max), 30.0);
    assert!(column(&csv, "max_abs_err").iter().all(|&e| e <= 1e-8));
}

#[test]
fn fluct_starts_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["fluct", "--model", "classical", "--n", "1000", "--runs", "100", "--times", "0,0.5"];
    assert!(srg(dir.path(), &args).status.success());
    let v = column(&read(dir.path(), "fluct.csv"), "v");
    assert_eq!(v[0], 0.0);
    assert!(v[1] > 0.0 && v[1] < 5.0);
    let few = ["fluct", "--n", "100", "--runs", "10"];
    assert_eq!(srg(dir.path(), &few).status.code(), Some(2));
}

#[test]
fn frozen_fluctuations_carry_caveat() {
    let dir = TempDir::new().unwrap();
    let args = ["fluct", "--p", "0", "--n", "300", "--runs", "100", "--times", "0.5,3"];
    assert!(srg(dir.path(), &args).status.success());
    assert_eq!(column(&read(dir.path(), "fluct.csv"), "caveat"), vec![0.0, 1.0]);
    let meta: serde_json::Value = serde_json::from_str(&read(dir.path(), "fluct.csv.meta.json")).unwrap();
    assert_eq!(meta["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn jam_scan_writes_stats_histogram_and_fits() {
    let dir = TempDir::new().unwrap();
    let args = ["jam-scan", "--p", "1", "--sizes", "200,400,800", "--runs", "50", "--format", "json"];
    assert!(srg(dir.path(), &args).status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&read(dir.path(), "jam_scan.json")).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["N"], 800);
    let hist: Vec<serde_json::Value> = serde_json::from_str(&read(dir.path(), "jam_kappa_hist.json")).unwrap();
    assert_eq!(hist.len(), 300);
    let fits: Vec<serde_json::Value> = serde_json::from_str(&read(dir.path(), "jam_fits.json")).unwrap();
    assert_eq!(fits[0]["form"], "linear_in_log");
}

#[test]
fn config_file_and_usage_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let cfg = d.join("run.json");
    std::fs::write(&cfg, r#"{"n_vertices": 500, "model": "classical", "times": [0.25, 0.75], "n_runs": 5}"#).unwrap();
    let out = srg(d, &["simulate", "--config", cfg.to_str().unwrap(), "--histograms"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(column(&read(d, "simulate.csv"), "t"), vec![0.25, 0.75]);
    assert!(read(d, "simulate_hist.csv").starts_with("t,kind,size,mean_count\n"));

    std::fs::write(&cfg, r#"{"vertices": 500}"#).unwrap();
    assert_eq!(srg(d, &["simulate", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(srg(d, &["simulate", "--times", "1,0.5"]).status.code(), Some(2));
    assert_eq!(srg(d, &["simulate", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(srg(d, &["jam-scan", "--model", "classical"]).status.code(), Some(2));
    assert_eq!(srg(d, &["nonsense"]).status.code(), Some(2));
}
