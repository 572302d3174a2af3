use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn clifft(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifft"))
        .args(args)
        .arg("--output")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn rows(out: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(out.join("report.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn heat_command_emits_its_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("heat");
    let res = clifft(&["heat", "--s", "1", "--t", "1", "--N", "128"], &out);
    // the residual stays above 1e-4 at this resolution
    assert_eq!(res.status.code(), Some(2));
    let rows = rows(&out);
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    for id in [
        "heat.pde_residual",
        "heat.transform",
        "heat.mass",
        "heat.mass_radial",
        "heat.semigroup",
        "heat.scaling",
    ] {
        assert!(ids.contains(&id), "missing {id}");
    }
    assert!(rows.iter().all(|r| r.len() == 5));
    let semigroup = rows.iter().find(|r| r[0] == "heat.semigroup").unwrap();
    assert_eq!(semigroup[4], "true");
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["command"], "heat");
    assert_eq!(summary["all_passed"], false);
    assert!(out.join("plots/heat_profile.dat").exists());
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "command = \"heat\"\nspeed = 3\n").unwrap();
    let out = dir.path().join("x");
    for args in [
        vec!["--config", bad.to_str().unwrap()],
        vec!["heat", "--s", "-1"],
        vec!["heat", "--N", "7"],
        vec!["hardy", "--m", "4"],
        vec!["--config", "/nonexistent/run.toml"],
    ] {
        let res = clifft(&args, &out);
        assert_eq!(res.status.code(), Some(1), "{args:?}");
    }
    assert!(!out.exists());
    let res = Command::new(env!("CARGO_BIN_EXE_clifft"))
        .args(["heat", "--sign", "sideways"])
        .output()
        .unwrap();
    assert_ne!(res.status.code(), Some(0));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "command = \"corollary\"\nr = 3.0\n[grid]\npoints = 64\nhalf_width = 10.0\n",
    )
    .unwrap();
    let out = dir.path().join("c");
    let res = clifft(&["--config", cfg.to_str().unwrap(), "--N", "96"], &out);
    assert_eq!(res.status.code(), Some(0));
    let rows = rows(&out);
    assert!(rows.iter().all(|r| r[0].starts_with("corollary.")));
    assert!(rows[0][1].contains("N=96") && rows[0][1].contains("r=3"));
}

#[test]
fn bench_writes_timing_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b");
    let res = clifft(&["bench", "--N", "32,64"], &out);
    assert_eq!(res.status.code(), Some(0));
    let table: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("bench.json")).unwrap()).unwrap();
    let entries = table["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[1]["points"], 64);
    assert!(entries[1]["speedup"].as_f64().unwrap() > 1.0);
    assert!(rows(&out).iter().all(|r| r[3].starts_with("info")));
}

#[test]
fn hardy_writes_overlays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h");
    let res = clifft(&["hardy", "--p", "0.5", "--N", "128"], &out);
    assert_eq!(
        res.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&res.stdout)
    );
    let text = fs::read_to_string(out.join("plots/hardy_p0.5.dat")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# radius norm log_norm fitted_log_norm"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!(first.len(), 4);
    assert!(out.join("plots/hardy_p0.5_transform.dat").exists());
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    clifft(&["miyachi", "--N", "96"], &a);
    clifft(&["miyachi", "--N", "96"], &b);
    for f in ["report.csv", "summary.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
}
