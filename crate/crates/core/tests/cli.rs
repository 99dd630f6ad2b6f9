use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-lab")).args(args).output().unwrap()
}

fn sweep(kind: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![kind, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    cli(&args)
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn family_sweep_writes_csv_and_manifest() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("plateau.csv");
    let o = sweep("family", &out, &["--alpha", "0.999", "--beta", "0.999", "--tau-max", "10", "--steps", "200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "sample_id,tau,negativity,min_pt_eigenvalue,bell_expectation,is_npt");
    let r = rows(&out);
    assert_eq!(r.len(), 200);
    let n = col(&r, 2);
    assert!((n[0] - 0.998501).abs() < 1e-6);
    assert!(n.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    assert!(*n.last().unwrap() >= 0.9975);

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("plateau.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(manifest["config"]["steps"], 200);
    assert!(manifest["seed"].is_u64());
    assert!(manifest["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(manifest["summary"]["invariant_eigenvalue"]["holds"], true);
}

#[test]
fn dfs_family_is_frozen() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("dfs.csv");
    assert!(sweep("family", &out, &["--alpha", "0.3", "--beta", "1", "--steps", "11"]).status.success());
    let r = rows(&out);
    for v in col(&r, 2) {
        assert!((v - 1.0).abs() < 1e-12);
    }
    for v in col(&r, 4) {
        assert!((v - 2.8729).abs() < 1e-4);
    }
}

#[test]
fn two_step_grid_hits_both_endpoints() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("two.csv");
    assert!(sweep("family", &out, &["--steps", "2", "--tau-max", "1"]).status.success());
    assert_eq!(col(&rows(&out), 1), vec![0.0, 1.0]);
}

#[test]
fn random_sweep_shape_and_determinism() {
    let dir = tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let args = ["--samples", "7", "--seed", "42", "--tau-max", "10", "--steps", "9"];
    assert!(sweep("random", &a, &args).status.success());
    assert!(sweep("random", &b, &args).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let r = rows(&a);
    assert_eq!(r.len(), 63);
    assert!(r.iter().all(|row| row[4].is_empty() && row[5] == "true"));
    let ids: Vec<usize> = r.iter().map(|row| row[0].parse().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));

    let c = dir.path().join("c.csv");
    assert!(sweep("random", &c, &["--samples", "7", "--seed", "43", "--steps", "9"]).status.success());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn random_sweep_independent_of_thread_count() {
    let dir = tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let args = |p: &Path| vec!["random".to_owned(), "--samples".into(), "5".into(), "--steps".into(), "6".into(), "--out".into(), p.display().to_string()];
    let run = |p: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qutrit-lab")).args(args(p)).env("RAYON_NUM_THREADS", threads).output().unwrap().status
    };
    assert!(run(&a, "1").success());
    assert!(run(&b, "4").success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn bell_sweep_crosses_the_bound_once() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("bell.csv");
    assert!(sweep("bell", &out, &["--alpha", "0.999", "--beta", "0.65", "--tau-max", "2", "--steps", "201"]).status.success());
    let r = rows(&out);
    let (analytic, numeric) = (col(&r, 4), col(&r, 6));
    assert!(analytic.iter().zip(&numeric).all(|(a, n)| (a - n).abs() <= 1e-12));
    let crossings: Vec<usize> = (1..analytic.len()).filter(|&i| analytic[i - 1] > 2.0 && analytic[i] <= 2.0).collect();
    assert_eq!(crossings.len(), 1);
    let tau = col(&r, 1);
    assert!(tau[crossings[0] - 1] < 0.354 && 0.354 <= tau[crossings[0]]);

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("bell.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["summary"]["verdict"]["regime"], "violates-then-dies");

    let never = dir.path().join("never.csv");
    assert!(sweep("bell", &never, &["--alpha", "0.999", "--beta", "0.7"]).status.success());
    assert!(col(&rows(&never), 4).iter().all(|&v| v > 2.0));
}

#[test]
fn unwritable_path_is_reported() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("missing").join("x.csv");
    let o = sweep("family", &out, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains(out.to_str().unwrap()));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("x.csv");
    assert_eq!(cli(&[]).status.code(), Some(2));
    assert_eq!(cli(&["family"]).status.code(), Some(2));
    assert_eq!(cli(&["family", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(sweep("family", &out, &["--steps", "1"]).status.code(), Some(2));
    assert_eq!(sweep("family", &out, &["--tau-max", "0"]).status.code(), Some(2));
    assert_eq!(sweep("family", &out, &["--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(sweep("random", &out, &["--samples", "0"]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn validate_passes_on_fresh_build() {
    let o = cli(&["validate"]);
    let report = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{report}");
    assert!(report.contains("[PASS] kraus completeness"));
    assert!(report.contains("mu maximizer"));
    assert!(report.contains("nu quoted as optimal"));
    assert!(!report.contains("[FAIL]"));
}
