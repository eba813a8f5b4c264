use std::path::Path;
use std::process::{Command, Output};

fn entangler(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entangler"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn csv_has_metadata_header_and_one_row_per_bin() {
    let dir = tempfile::tempdir().unwrap();
    let out = entangler(dir.path(), &["fig6", "--samples", "500", "--seed", "7", "--bins", "40"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "fig6.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        &lines[..6],
        ["# experiment=fig6", "# seed=7", "# samples=500", "# gate=none", "# bins=40", "bin_center,density"]
    );
    assert_eq!(lines.len(), 6 + 40);
    let width = 1.0 / 40.0;
    let integral: f64 = lines[6..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() * width)
        .sum();
    assert!((integral - 1.0).abs() < 1e-12);
}

#[test]
fn json_reports_estimators_with_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let out = entangler(dir.path(), &["epower", "--samples", "800", "--out", "sub/ep"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&read(dir.path(), "sub/ep.json")).unwrap();
    assert_eq!(v["samples"], 800);
    assert_eq!(v["seed"], 1);
    assert_eq!(v["gate"], "cnot");
    assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    let eps = v["scalars"]["epsilon_p"].as_f64().unwrap();
    assert!(eps > 0.4 && eps < 0.6);
    assert!(v["scalars"]["epsilon_p_stderr"].as_f64().unwrap() > 0.0);
}

#[test]
fn multi_curve_runs_write_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = entangler(dir.path(), &["fig4", "--samples", "300", "--out", "f4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&read(dir.path(), "f4.json")).unwrap();
    let labels: Vec<&str> = v["curves"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["all", "region_i", "region_ii"]);
    for c in v["curves"].as_array().unwrap() {
        assert!(dir.path().join(c["path"].as_str().unwrap()).exists());
    }
    assert!(read(dir.path(), "f4_region_i.csv").contains("# curve=region_i"));
}

#[test]
fn sweep_writes_one_table_per_base() {
    let dir = tempfile::tempdir().unwrap();
    let out = entangler(dir.path(), &["fig2", "--samples", "200", "--xs", "-0.1,0.1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for base in ["cnot", "pi8"] {
        let csv = read(dir.path(), &format!("fig2_{base}.csv"));
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);
    }
    let v: serde_json::Value = serde_json::from_str(&read(dir.path(), "fig2.json")).unwrap();
    assert_eq!(v["sweeps"]["pi8"].as_array().unwrap().len(), 2);
}

#[test]
fn fig1_without_gate_runs_the_default_gate_set() {
    let dir = tempfile::tempdir().unwrap();
    assert!(entangler(dir.path(), &["fig1", "--samples", "200"]).status.success());
    for label in ["curve1", "curve2", "curve3", "curve4", "curve5", "identity"] {
        assert!(dir.path().join(format!("fig1_{label}.csv")).exists(), "{label}");
    }
    // the identity leaves every state's entanglement unchanged
    let id = read(dir.path(), "fig1_identity.csv");
    let peak = id.lines().find(|l| l.starts_with("0.0") || l.starts_with("-0.0")).unwrap();
    assert!(peak.split(',').nth(1).unwrap().parse::<f64>().unwrap() > 90.0);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["fig1", "--gate", "toffoli"][..],
        &["fig3", "--na", "9"],
        &["fig6", "--gate", "cnot"],
        &["fig6", "--samples", "0"],
        &["fig2", "--xs", "1.0"],
        &["custom"],
        &["fig4", "--metric", "trace"],
        &["fig99"],
    ] {
        let out = entangler(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("blocker"), "").unwrap();
    let out = entangler(dir.path(), &["fig6", "--samples", "100", "--out", "blocker/x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["fig7a", "--samples", "1500", "--seed", "3", "--chunk-size", "256"];
    assert!(entangler(dir.path(), &[&args[..], &["--out", "a"]].concat()).status.success());
    assert!(entangler(dir.path(), &[&args[..], &["--out", "b", "--workers", "4"]].concat()).status.success());
    for label in ["n3", "n3_ac", "n3_bc", "n3_random", "n2"] {
        assert_eq!(
            std::fs::read(dir.path().join(format!("a_{label}.csv"))).unwrap(),
            std::fs::read(dir.path().join(format!("b_{label}.csv"))).unwrap(),
            "{label}"
        );
    }
}
