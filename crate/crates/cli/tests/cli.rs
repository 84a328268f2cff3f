use std::fs;
use std::process::{Command, Output};

fn vqelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vqelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn fci_prints_ground_energy() {
    let out = vqelab(&["fci", "--molecule", "h2"]);
    assert!(out.status.success());
    let e: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((e + 1.857275).abs() < 1e-5, "{e}");
}

#[test]
fn fci_accepts_a_file_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z.txt");
    fs::write(&p, "format: pauli\nn: 1\nZ 1.0\n").unwrap();
    let out = vqelab(&["fci", "--molecule", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "-1");
}

#[test]
fn run_writes_outputs_and_stats_matches() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let out = vqelab(&[
        "run",
        "--molecule",
        "h2",
        "--n-start",
        "-2",
        "--n-end",
        "2",
        "--n-step",
        "1",
        "--seed",
        "5",
        "--maxiter",
        "40",
        "--trace",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "records.csv",
        "summary.txt",
        "accuracy_deviation.svg",
        "iteration_deviation.svg",
        "trace.txt",
    ] {
        assert!(out_dir.join(f).exists(), "missing {f}");
    }
    let csv = fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);

    let stats = vqelab(&["stats", out_dir.join("records.csv").to_str().unwrap()]);
    assert!(stats.status.success());
    let stats = String::from_utf8(stats.stdout).unwrap();
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    for key in [
        "max_accuracy_deviation",
        "iteration_deviation_mean",
        "correlation_positive",
    ] {
        let line = |t: &str| t.lines().find(|l| l.starts_with(key)).unwrap().to_string();
        assert_eq!(line(&stats), line(&summary));
    }
    assert!(summary.contains("shots = 1024"));
    assert!(summary.contains("repeats = 1"));
}

#[test]
fn grid_without_baseline_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = vqelab(&[
        "run",
        "--molecule",
        "h2",
        "--n-start",
        "1",
        "--n-end",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("N = 0"));
}

#[test]
fn bad_inputs_fail_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        vec!["run", "--molecule", "missing", "--out", d],
        vec!["run", "--molecule", "h2", "--shots", "0", "--out", d],
        vec!["run", "--molecule", "h2", "--n-step", "0", "--out", d],
        vec!["run", "--molecule", "h2", "--rhobeg", "0.00001", "--out", d],
    ] {
        let out = vqelab(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
