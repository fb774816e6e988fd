use std::process::{Command, Output};

use serde_json::Value;

fn oracle_disc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oracle-disc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = oracle_disc(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema_version"], "1");
    v
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn uniform_state_is_certain() {
    let v = json(&["discriminate", "-n", "3", "--state", "uniform"]);
    assert!(num(&v["helstrom_error"]).abs() < 1e-12);
    assert_eq!(v["certainty"]["certain"], true);
    assert_eq!(v["certainty"]["eigen_summary"]["rank"], 1);
}

#[test]
fn maximally_mixed_state_gives_no_information() {
    let v = json(&["discriminate", "-n", "2", "--state", "mixed:maximal"]);
    assert!((num(&v["helstrom_error"]) - 0.5).abs() < 1e-12);
    assert_eq!(v["certainty"]["certain"], false);
}

#[test]
fn thermal_state_respects_the_bound() {
    let v = json(&[
        "discriminate",
        "-n",
        "2",
        "--state",
        "thermal:1e-5,1e-5",
        "--bruteforce",
    ]);
    let eps = num(&v["thermal_bound"]["epsilon"]);
    assert!((eps - 4.0 / 3.0 * 2.0 * 1e-5).abs() < 1e-15);
    assert!(num(&v["helstrom_error"]) >= (1.0 - eps) / 2.0 - 1e-12);
    assert!(num(&v["bruteforce"]["max_deviation"]) <= 1e-12);
    assert_eq!(v["bruteforce"]["functions_used"], 6);
}

#[test]
fn inline_and_file_phases_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phases.json");
    std::fs::write(&path, "[0.1, 2.0, -1.3, 0.7]").unwrap();
    let spec = format!("phases:{}", path.display());
    let from_file = json(&["discriminate", "-n", "2", "--state", &spec]);
    let inline = json(&[
        "discriminate",
        "-n",
        "2",
        "--state",
        "phases:0.1,2.0,-1.3,0.7",
    ]);
    assert_eq!(from_file["povm"], inline["povm"]);
    assert!(num(&inline["helstrom_error"]).abs() < 1e-12);
}

#[test]
fn density_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    std::fs::write(&path, "[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]").unwrap();
    let v = json(&[
        "discriminate",
        "-n",
        "1",
        "--state",
        &format!("file:{}", path.display()),
    ]);
    assert_eq!(v["certainty"]["certain"], true);

    std::fs::write(&path, "[[[0.5,0],[0.9,0]],[[0.9,0],[0.5,0]]]").unwrap();
    let out = oracle_disc(&[
        "discriminate",
        "-n",
        "1",
        "--state",
        &format!("file:{}", path.display()),
    ]);
    assert!(!out.status.success());
}

#[test]
fn minimum_qubits() {
    let v = json(&["thermal-bound", "--alpha1", "1e-5", "--min-qubits"]);
    assert_eq!(v["min_qubits"], 86603);
}

#[test]
fn sweep_crosses_over_near_the_minimum() {
    let out = oracle_disc(&[
        "thermal-bound",
        "--alpha1",
        "1e-5",
        "--sweep",
        "1:100000:1000",
        "--csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,epsilon,p_error_lower,advantage"));
    let rows: Vec<(u64, bool)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3] == "true")
        })
        .collect();
    assert_eq!(rows.len(), 100);
    let first = rows.iter().find(|r| r.1).unwrap().0;
    assert!((86603..86603 + 1000).contains(&first));
    assert!(rows.iter().all(|&(n, adv)| adv == (n >= 86603)));
}

#[test]
fn zero_polarization_has_no_advantage() {
    let v = json(&["thermal-bound", "--alphas", "0,0"]);
    assert_eq!(num(&v["epsilon"]), 0.0);
    assert_eq!(num(&v["p_error_lower"]), 0.5);
    assert_eq!(v["advantage"], false);
}

#[test]
fn nonpositive_alpha1_is_rejected() {
    for a in ["0", "-1e-5"] {
        let out = oracle_disc(&["thermal-bound", &format!("--alpha1={a}"), "--min-qubits"]);
        assert!(!out.status.success(), "{a}");
    }
}

#[test]
fn pair_sums() {
    let v = json(&["enumerate", "-n", "2", "--pair", "0", "3"]);
    assert_eq!(v["pair"]["sum"], -2);
    assert_eq!(v["pair"]["closed_form"], -2);
    let v = json(&["enumerate", "-n", "3", "--pair", "1", "1"]);
    assert_eq!(v["pair"]["sum"], 70);
}

#[test]
fn value_table() {
    let v = json(&["enumerate", "-n", "3", "--table"]);
    let counts: Vec<u64> = v["table"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            assert_eq!(r["count"], r["expected"]);
            r["count"].as_u64().unwrap()
        })
        .collect();
    assert_eq!(counts, [15, 20, 20, 15]);
}

#[test]
fn every_admissible_function_is_decided() {
    let v = json(&["run", "-n", "2", "--state", "uniform", "--all"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 8);
    for r in results {
        assert!((num(&r["p_correct"]) - 1.0).abs() < 1e-10);
    }
    assert_eq!(v["all_certain"], true);
}

#[test]
fn single_functions() {
    let v = json(&["run", "-n", "2", "--state", "uniform", "-f", "0f"]);
    assert_eq!(v["results"][0]["class"], "constant");
    assert!((num(&v["results"][0]["p_constant"]) - 1.0).abs() < 1e-10);
    let v = json(&["run", "-n", "2", "--state", "uniform", "-f", "03"]);
    assert_eq!(v["results"][0]["class"], "balanced");
    assert!((num(&v["results"][0]["p_balanced"]) - 1.0).abs() < 1e-10);
}

#[test]
fn function_outside_the_promise() {
    let out = oracle_disc(&["run", "-n", "2", "--state", "uniform", "-f", "01"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["class"], "neither");
}

#[test]
fn classical_baseline() {
    let v = json(&["classical", "-n", "2", "--k", "2"]);
    assert_eq!(v["exact"], "5/6");
    let v = json(&["classical", "-n", "3"]);
    assert_eq!(v["worst_case_queries"], 5);
    assert_eq!(v["success_by_k"].as_array().unwrap().len(), 5);
}

#[test]
fn output_is_reproducible() {
    let args = [
        "discriminate",
        "-n",
        "3",
        "--state",
        "random:mixed",
        "--seed",
        "11",
        "--bruteforce",
    ];
    let a = oracle_disc(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_oracle-disc"))
        .args(args)
        .env("ORACLE_DISC_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = oracle_disc(&[
        "discriminate",
        "-n",
        "3",
        "--state",
        "random:mixed",
        "--seed",
        "12",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = oracle_disc(&["classical", "-n", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "classical");
}

#[test]
fn invalid_input_fails() {
    let cases: &[&[&str]] = &[
        &["discriminate", "-n", "2", "--state", "bogus"],
        &["discriminate", "-n", "2", "--state", "thermal:0.1"],
        &["discriminate", "-n", "5", "--bruteforce"],
        &["discriminate", "-n", "2", "--p-const", "1.5"],
        &["run", "-n", "2", "-f", "1ff"],
        &["run", "-n", "4", "--all"],
        &["enumerate", "-n", "5", "--table"],
        &["enumerate", "-n", "2", "--pair", "0", "4"],
        &["classical", "-n", "0"],
        &["thermal-bound", "--alpha1", "1e-5", "--sweep", "5:1:1"],
    ];
    for args in cases {
        let out = oracle_disc(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_oracle-disc"))
        .args(["classical", "-n", "1"])
        .env("ORACLE_DISC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
