use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fuzzy-fluid");

const BASE: &str = r#"{
    "a": 0.1, "h": 1.0, "kmax": 2.0, "dt": 0.01, "t_end": 0.05,
    "pairing": "polarized_trace",
    "initial": { "random": { "seed": 3, "k0": 1.5, "amplitude": 0.1 } }
}"#;

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("config.json");
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn simulate_writes_outputs_next_to_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE);
    let o = run(&["simulate"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = dir.path().join("output");
    let csv = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("t,H,"), "{}", lines[0]);
    assert_eq!(lines.len(), 1 + 6);
    assert!(out.join("final_state.json").exists());
    assert!(out.join("resolved_config.json").exists());
}

#[test]
fn zero_length_run_writes_header_and_initial_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &BASE.replace("\"t_end\": 0.05", "\"t_end\": 0.0"));
    let o = run(&["simulate"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("output/diagnostics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn unknown_key_exits_2_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &BASE.replace("\"dt\"", "\"dtt\""));
    let o = run(&["simulate"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dtt"), "{}", stderr(&o));
}

#[test]
fn missing_config_file_exits_2() {
    let o = run(&["simulate"], Some(Path::new("/nonexistent/config.json")));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["simulate"], None).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn runaway_run_exits_3_and_keeps_last_finite_state() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE
        .replace("\"amplitude\": 0.1", "\"amplitude\": 1e3")
        .replace("\"t_end\": 0.05", "\"t_end\": 5.0")
        .replace("\"dt\": 0.01", "\"dt\": 0.5");
    let cfg = write_config(dir.path(), &text);
    let o = run(&["simulate"], Some(&cfg));
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let snap = std::fs::read_to_string(dir.path().join("output/final_state.json")).unwrap();
    assert!(!snap.contains("null") && !snap.contains("NaN"));
}

#[test]
fn spectrum_of_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE);
    assert_eq!(run(&["simulate"], Some(&cfg)).status.code(), Some(0));
    let snap = dir.path().join("output/final_state.json");
    let out = dir.path().join("spectrum.csv");
    let o = Command::new(BIN)
        .arg("spectrum")
        .arg("--snapshot")
        .arg(&snap)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(out).unwrap();
    assert_eq!(csv.lines().next(), Some("shell,k,nodes,energy"));
    assert!(csv.lines().count() >= 3);
}

#[test]
fn bad_snapshot_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("broken.json");
    std::fs::write(&snap, "{ \"t\": 0.0 }").unwrap();
    let o = Command::new(BIN).arg("spectrum").arg("--snapshot").arg(&snap).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_with_zero_cutoff_has_zero_distance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASE);
    let o = run(&["sweep", "--a-list", "0"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("output/sweep.csv")).unwrap();
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(2).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.iter().all(|r| r[0] == 0.0 && r[1] == 0.0), "{csv}");
}

#[test]
fn verify_passes_and_injected_fault_fails() {
    let ok = run(&["verify"], None);
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8_lossy(&ok.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11, "{text}");

    let bad = run(&["verify", "--inject-fault"], None);
    assert_ne!(bad.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL gradient_consistency"));
}
