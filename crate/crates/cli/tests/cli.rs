use std::collections::HashMap;
use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn tractrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tractrix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_for_the_reference_pair() {
    let out = tractrix(&["verify", "--R", "2", "--selector", "0.9273"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 13);
    for c in checks {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c.get("check").is_some() && c.get("samples").is_some() && c.get("max_residual").is_some());
    }
    assert!((v["params"]["c1"].as_f64().unwrap() - 0.6).abs() < 1e-4);
}

#[test]
fn area_reference_example() {
    let out = tractrix(&["area", "--regime", "supercritical", "--R", "1.25", "--tol", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["value"].as_f64().unwrap() - 12.566371).abs() <= 1e-4);
    assert_eq!(v["pass"], true);
    assert!(v["truncation"]["bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn critical_volume() {
    let out = tractrix(&["volume", "--regime", "critical", "--tol", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["value"].as_f64().unwrap() - 2.0 * PI / 3.0).abs() <= 1e-3);
    assert_eq!(v["truncation"], Value::Null);
}

#[test]
fn subcritical_volume_has_no_target() {
    let out = tractrix(&["volume", "--R", "0.6", "--tol", "1e-5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["target"], Value::Null);
    assert_eq!(v["pass"], true);
}

#[test]
fn petals() {
    let v = json_of(&tractrix(&["petals", "--nu", "3/4"]));
    assert_eq!(v["closed"], true);
    assert_eq!(v["petals"], 3);
    assert_eq!(v["windings"], 4);
    assert!((v["phi"].as_f64().unwrap() - 8.0 * PI / 3.0).abs() < 1e-12);

    let v = json_of(&tractrix(&["petals", "--nu", "4/5"]));
    assert_eq!((v["petals"].as_u64(), v["windings"].as_u64()), (Some(4), Some(5)));

    let v = json_of(&tractrix(&["petals", "--R", "0.6"]));
    assert_eq!(v["closed"], false);
    assert_eq!(v["petals"], Value::Null);
}

#[test]
fn invalid_inputs_exit_with_2() {
    for args in [
        vec!["verify", "--R", "-1"],
        vec!["verify", "--R", "2", "--c1", "0.6", "--c2", "0.7"],
        vec!["area", "--R", "2", "--regime", "critical"],
        vec!["area", "--R", "2", "--tol", "1e-12"],
        vec!["petals", "--R", "2"],
        vec!["petals", "--R", "0.6", "--nu", "3/4"],
        vec!["verify", "--bogus", "1"],
        vec!["rear-track", "--R", "2", "--t0", "0"],
    ] {
        let out = tractrix(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn failing_check_exits_with_1_and_reports_residual() {
    let out = tractrix(&["rear-track", "--R", "2", "--selector", "0.9273", "--max-error", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("deviates by"), "{err}");
    assert_eq!(json_of(&out)["pass"], false);
}

#[test]
fn rear_track_matches_closed_form() {
    for args in [
        vec!["rear-track", "--R", "2", "--c1", "0.6", "--c2", "0.8"],
        vec!["rear-track", "--R", "1", "--c1", "2", "--c2", "2"],
        vec!["rear-track", "--R", "0.9", "--selector", "0.5"],
    ] {
        let out = tractrix(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json_of(&out);
        assert!(v["comparison"]["max_error"].as_f64().unwrap() <= 1e-6);
        assert!(v["drift_order"]["ratio"].as_f64().unwrap() >= 15.0);
    }
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("area.json");
    fs::write(&cfg, r#"{"command": "area", "regime": "supercritical", "R": 1.25, "tol": 1e-4}"#).unwrap();
    let from_file = tractrix(&["run", cfg.to_str().unwrap()]);
    let from_flags = tractrix(&["area", "--regime", "supercritical", "--R", "1.25", "--tol", "1e-4"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_flags.stdout);

    fs::write(&cfg, r#"{"command": "area", "R": 2, "colour": "red"}"#).unwrap();
    assert_eq!(tractrix(&["run", cfg.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&cfg, "not json").unwrap();
    assert_eq!(tractrix(&["run", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = tractrix(&[
        "eval-curve", "--R", "2", "--c1", "0.6", "--c2", "0.8", "--t-min", "-2", "--t-max", "2", "--samples", "41",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,z,speed,kappa,tau"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 41);
    // t = 0 is a cusp: zero speed, no Frenet frame
    let cusp = &rows[20];
    assert_eq!(cusp[0], 0.0);
    assert!(cusp[4].abs() < 1e-15 && cusp[5].is_nan());
    assert!(rows[5][6].abs() > 1e-6);
}

fn obj_edge_counts(text: &str) -> Vec<HashMap<(usize, usize), usize>> {
    let mut objects = Vec::new();
    for line in text.lines() {
        if line.starts_with("o ") {
            objects.push(HashMap::new());
        } else if let Some(f) = line.strip_prefix("f ") {
            let v: Vec<usize> = f.split(' ').map(|x| x.parse().unwrap()).collect();
            let counts = objects.last_mut().unwrap();
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
    }
    objects
}

#[test]
fn surface_export_is_deterministic_and_manifold() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.obj");
    let b = dir.path().join("b.obj");
    for p in [&a, &b] {
        let out = tractrix(&["eval-surface", "--R", "0.6", "--t-samples", "10", "--alpha-samples", "12", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let ta = fs::read(&a).unwrap();
    assert_eq!(ta, fs::read(&b).unwrap());
    assert_eq!(fs::read(a.with_extension("edges.json")).unwrap(), fs::read(b.with_extension("edges.json")).unwrap());

    let text = String::from_utf8(ta).unwrap();
    let objects = obj_edge_counts(&text);
    // two components, each cut into two units
    assert_eq!(objects.len(), 4);
    for counts in objects {
        assert!(counts.values().all(|&c| c == 1 || c == 2));
        assert_eq!(counts.values().filter(|&&c| c == 1).count(), 2 * 9 + 2 * 11);
    }
    let side: Value = serde_json::from_slice(&fs::read(a.with_extension("edges.json")).unwrap()).unwrap();
    assert_eq!(side["schema"], 1);
    assert_eq!(side["cuspidal_edges"].as_array().unwrap().len(), 6);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tractrix(&["verify", "--R", "0.6", "--selector", "1", "--branch", "minus", "--samples", "100"]);
    let b = tractrix(&["verify", "--R", "0.6", "--selector", "1", "--branch", "minus", "--samples", "100"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
