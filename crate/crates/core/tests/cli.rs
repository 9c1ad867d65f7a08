//! End-to-end runs of the `homlie` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn homlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlie"))
        .args(args)
        .env_remove("HOMLIE_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_passes_and_reports() {
    let out = homlie(&["verify", "--seed", "7", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "verify");
    assert_eq!(v["pass"], true);
    assert!(v["cases"].as_array().unwrap().len() > 10);
    assert!(!out.stderr.is_empty(), "text table goes to stderr");
}

#[test]
fn inline_beta_forms_are_accepted() {
    for beta in ["id", "diag(1,-1)", "perm(1,2)", "[[1,-2],[0,-1]]"] {
        let out = homlie(&["verify", "algebra", "--beta", beta, "--samples", "10"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{beta}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["n"], 2);
    }
    let out = homlie(&[
        "verify",
        "algebra",
        "--beta",
        "diag(1,-1,1)",
        "--samples",
        "10",
    ]);
    assert_eq!(json(&out)["n"], 3);
}

#[test]
fn beta_from_file() {
    let path = scratch("beta.txt");
    std::fs::write(&path, "3\n0 1 0\n1 0 0\n0 0 1\n").unwrap();
    let out = homlie(&[
        "verify",
        "algebra",
        "--beta",
        path.to_str().unwrap(),
        "--samples",
        "10",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["n"], 3);
}

#[test]
fn invalid_inputs_exit_2() {
    assert_eq!(
        homlie(&["verify", "--beta", "[[1,1],[0,1]]"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homlie(&["verify", "--tol", "nonsense=1e-3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homlie(&["verify", "--tol", "jacobi=-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homlie(&["toda", "--l0", "[[1,2],[0,1]]"]).status.code(),
        Some(2)
    );
    assert_eq!(homlie(&["toda", "--dt", "0"]).status.code(), Some(2));
}

#[test]
fn tolerance_override_can_fail_a_run() {
    let out = homlie(&[
        "verify",
        "algebra",
        "--tol",
        "jacobi=1e-30",
        "--samples",
        "10",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_homlie"));
        cmd.args(["verify", "algebra", "--samples", "5"])
            .args(args)
            .env_remove("HOMLIE_SEED");
        if let Some(s) = env {
            cmd.env("HOMLIE_SEED", s);
        }
        json(&cmd.output().unwrap())["config"]["seed"].clone()
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("11"), &[]), 11);
    assert_eq!(run(Some("11"), &["--seed", "4"]), 4);
}

#[test]
fn cohomology_json_and_table() {
    let out = homlie(&["cohomology", "--beta", "perm(1,2)", "--kmax", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["data"]["cohomology"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let betti: Vec<u64> = rows
        .iter()
        .map(|r| r["dim_h_hom"].as_u64().unwrap())
        .collect();
    assert_eq!(betti, [1, 1, 0, 1]);
    let text = homlie(&["cohomology", "--kmax", "2"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&text.stdout).contains("dim H"));
}

#[test]
fn group_cases_run() {
    for case in ["gl", "on", "o11", "mbeta", "det"] {
        let out = homlie(&["group", "--case", case, "--samples", "20"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{case}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = homlie(&[
        "group",
        "--case",
        "morphism",
        "--n",
        "2",
        "--beta",
        "diag(1,-1)",
        "--C",
        "[[1,1],[0,1]]",
        "--samples",
        "20",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn out_writes_json_file() {
    let path = scratch("verify.json");
    let out = homlie(&[
        "verify",
        "algebra",
        "--samples",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn toda_writes_trajectory_summary_and_plot() {
    let (csv, summary, plot) = (
        scratch("traj.csv"),
        scratch("summary.json"),
        scratch("plot.csv"),
    );
    let out = homlie(&[
        "toda",
        "--n",
        "3",
        "--beta",
        "diag(1,-1,1)",
        "--t-end",
        "1",
        "--dt",
        "0.01",
        "--record",
        "10",
        "--out",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
        "--plot-data",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "t");
    assert_eq!(header[1], "L_1_1");
    assert!(header.contains(&"trL2".to_string()));
    assert_eq!(header.len(), 1 + 9 + 3 + 3 + 3);
    assert_eq!(reader.records().count(), 11);

    let s: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["n"], 3);
    assert!(s["drifts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d["name"] == "trL2"));

    let mut plot = csv::Reader::from_path(&plot).unwrap();
    assert_eq!(
        plot.headers().unwrap().iter().collect::<Vec<_>>(),
        ["t", "eig1", "eig2", "eig3", "trL2"]
    );
}
