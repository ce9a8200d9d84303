use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn relbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbell")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = relbell(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn closed_chsh(beta: f64, eta: f64) -> f64 {
    let omega = beta.atanh();
    let w = (eta.sinh() * omega.sinh()).atan2(eta.cosh() + omega.cosh());
    2.0 * ((1.0 - beta * beta).sqrt() + w.cos()) / (2.0 - beta * beta).sqrt()
}

#[test]
fn exit_codes() {
    assert_eq!(relbell(&["wigner-angle", "--eta", "2", "--omega", "1"]).status.code(), Some(0));
    assert_eq!(relbell(&["--help"]).status.code(), Some(0));
    assert_eq!(relbell(&["chsh", "--eta", "1"]).status.code(), Some(2));
    assert_eq!(relbell(&["chsh", "--eta", "1", "--beta", "0.5", "--omega", "1"]).status.code(), Some(2));
    assert_eq!(relbell(&["chsh", "--eta", "1", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(relbell(&["transform", "--state", "02", "--eta", "1", "--beta", "0.5"]).status.code(), Some(2));
    assert_eq!(relbell(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(relbell(&["sweep", "--beta-lo", "0.9", "--beta-hi", "0.1"]).status.code(), Some(2));
    let out = relbell(&["sweep", "--beta-steps", "2", "--eta-steps", "2", "--output", "/nonexistent-dir/x/out.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(relbell(&["sweep", "--config", "/nonexistent-dir/sweep.toml"]).status.code(), Some(3));
}

#[test]
fn wigner_angle_report() {
    let v = json(&["wigner-angle", "--eta", "2", "--omega", &0.8_f64.atanh().to_string()]);
    let closed = v["wigner_angle_closed"].as_f64().unwrap();
    assert!((closed - 0.7277).abs() < 1e-4, "{v}");
    assert!(v["abs_diff"].as_f64().unwrap() < 1e-10, "{v}");
}

#[test]
fn chsh_report_matches_reference() {
    let v = json(&["chsh", "--eta", "1", "--beta", "0.999"]);
    assert!((v["chsh_closed"].as_f64().unwrap() - 1.4345014515256749).abs() < 1e-12, "{v}");
    assert!((v["chsh_matrix"].as_f64().unwrap() - 1.4345014515256749).abs() < 1e-10, "{v}");
    let text = stdout(&relbell(&["chsh", "--eta", "0", "--omega", "0"]));
    assert!(text.contains("violates"), "{text}");
}

#[test]
fn sweep_csv_header_determinism_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "sweep".to_string(),
            "--beta-hi".into(),
            "0.99".into(),
            "--beta-steps".into(),
            "7".into(),
            "--eta-steps".into(),
            "5".into(),
            "--output".into(),
            p.display().to_string(),
        ]
    };
    for p in [&first, &second] {
        let a = args(p);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(relbell(&refs).status.code(), Some(0));
    }
    let bytes = std::fs::read(&first).unwrap();
    assert_eq!(bytes, std::fs::read(&second).unwrap());

    let text = String::from_utf8(bytes).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), relbell::cli::SWEEP_HEADER);
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 35);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 10);
        let (beta, eta) = (row[0], row[1]);
        assert!((closed_chsh(beta, eta) - row[9]).abs() < 1e-12, "row {i}: {row:?}");
        assert!((row[8] - row[9]).abs() < 1e-10);
        assert!((row[4] + row[5] + row[6] - row[7] - row[8]).abs() < 1e-12);
    }
    // beta-major ordering
    assert!(rows.windows(2).all(|w| w[0][0] <= w[1][0]));
    assert_eq!(rows[0][1], 0.0);
    assert_eq!(rows[4][1], 3.0);
}

#[test]
fn full_sweep_is_fast_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let start = Instant::now();
    let out = relbell(&["sweep", "--output", path.to_str().unwrap()]);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2500);
    for r in rows {
        let f: Vec<f64> = r.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((f[8] - f[9]).abs() < 1e-10);
    }
}

#[test]
fn sweep_json_mirrors_csv() {
    let csv = stdout(&relbell(&["sweep", "--beta-steps", "3", "--eta-steps", "2"]));
    let out = relbell(&["sweep", "--beta-steps", "3", "--eta-steps", "2", "--format", "json"]);
    let rows: Vec<serde_json::Map<String, Value>> = serde_json::from_slice(&out.stdout).unwrap();
    let header: Vec<&str> = relbell::cli::SWEEP_HEADER.split(',').collect();
    for (row, line) in rows.iter().zip(csv.lines().skip(1)) {
        assert_eq!(row.keys().map(String::as_str).collect::<Vec<_>>(), header);
        for (key, field) in header.iter().zip(line.split(',')) {
            assert_eq!(row[*key].as_f64().unwrap(), field.parse::<f64>().unwrap());
        }
    }
    assert_eq!(rows.len(), 6);
}

#[test]
fn sweep_config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    let out_path = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        format!(
            "beta_lo = 0.1\nbeta_hi = 0.5\nbeta_steps = 3\neta_lo = 1.0\neta_hi = 1.0\neta_steps = 1\noutput = {:?}\n",
            out_path.display().to_string()
        ),
    )
    .unwrap();
    let out = relbell(&["sweep", "--config", cfg.to_str().unwrap(), "--beta-steps", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["beta"].as_f64(), Some(0.1));
    assert_eq!(rows[1]["beta"].as_f64(), Some(0.5));

    std::fs::write(&cfg, "beta_steps = 3\nunknown_key = 1\n").unwrap();
    assert_eq!(relbell(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn threshold_report() {
    let v = json(&["threshold", "--eta", "2"]);
    let beta = v["beta_star"].as_f64().unwrap();
    assert!(beta > 0.0 && beta < 1.0);
    assert!(v["residual_closed"].as_f64().unwrap() < 1e-10);
    assert!(v["residual_matrix"].as_f64().unwrap() < 1e-10);
    // At eta = 0 the value never drops to 2 before beta = 1.
    assert!(json(&["threshold", "--eta", "0"])["beta_star"].is_null());
}

#[test]
fn optimize_report_is_deterministic() {
    let args = ["optimize", "--eta", "2", "--beta", "0.9", "--seed", "7"];
    let v = json(&args);
    assert!((v["best_value"].as_f64().unwrap() - 2.8284).abs() < 1e-4, "{v}");
    assert_eq!(v["converged"], Value::Bool(true));
    assert!(v["gap"].as_f64().unwrap().abs() < 1e-6);
    assert_eq!(relbell(&args).stdout, relbell(&args).stdout);
}

#[test]
fn massless_report() {
    let v = json(&["massless", "--theta-a", "0.3", "--theta-b", "0.7"]);
    assert!(v["concurrence_delta"].as_f64().unwrap().abs() < 1e-12, "{v}");
    let text = stdout(&relbell(&["massless", "--theta-a", "0.3", "--theta-b", "0.7", "--state", "11"]));
    assert!(text.contains("concurrence_delta"));
}

#[test]
fn transform_two_sided_leaves_psi01_alone() {
    let v = json(&["transform", "--state", "01", "--eta", "1.5", "--omega", "2", "--mode", "two-sided"]);
    let c = v["bell_coefficients"].as_array().unwrap();
    assert!((c[1][0].as_f64().unwrap() - 1.0).abs() < 1e-12, "{v}");
    for k in [0, 2, 3] {
        assert!(c[k][0].as_f64().unwrap().abs() < 1e-12 && c[k][1].as_f64().unwrap().abs() < 1e-12);
    }
    assert!((v["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}
