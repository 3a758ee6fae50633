mod common;

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(common::bin()).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn design_prints_conforming_dimensions() {
    let text = stdout(&run(&["design", "--a-band", "30", "--t-w", "1.5", "--h-ch", "5"]));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row, ["30.000000", "20.000000", "31.415927", "10.000000", "10.000000", "28.000000", "39.415927"]);
}

#[test]
fn design_json_is_full_precision() {
    let text = stdout(&run(&["design", "--a-band", "30", "--t-w", "1.5", "--h-ch", "5", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["sarcomere"]["actin_arc"].as_f64().unwrap(), 10.0 * std::f64::consts::PI);
    assert_eq!(v["myosin_height_bounds_mm"][0].as_f64().unwrap(), 28.0);
}

#[test]
fn validate_against_self_and_shift() {
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("reference.csv");
    let shifted = dir.path().join("shifted.csv");
    let qq = dir.path().join("qq.csv");
    std::fs::write(&reference, "x,y\n0,0\n1,2\n2,5\n3,10\n").unwrap();
    std::fs::write(&shifted, "x,y\n0,1\n1,3\n2,6\n3,11\n").unwrap();
    let (r, s, q) = (reference.to_str().unwrap(), shifted.to_str().unwrap(), qq.to_str().unwrap());

    let text = stdout(&run(&["validate", r, r, "--format", "json", "--qq", "4", "--qq-out", q]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["frechet_normalized"].as_f64().unwrap(), 0.0);
    assert_eq!(v["r_squared"].as_f64().unwrap(), 1.0);
    let qq_text = std::fs::read_to_string(&qq).unwrap();
    assert_eq!(qq_text.lines().count(), 5);
    for line in qq_text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[1], f[2]);
    }

    let text = stdout(&run(&["validate", s, r]));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "10.000000");
    assert_eq!(row[3], "1.000000");
}

#[test]
fn validate_rejects_unknown_file() {
    let out = run(&["validate", "/nonexistent/a.csv", "/nonexistent/b.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_json_matches_csv() {
    let cfg = common::config("prototype.ini");
    let cfg = cfg.to_str().unwrap();
    let csv_text = stdout(&run(&["simulate", "--config", cfg]));
    let json_text = stdout(&run(&["simulate", "--config", cfg, "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 10);
    for (state, line) in states.iter().zip(csv_text.lines().skip(1)) {
        let f: Vec<&str> = line.split(',').collect();
        let p: f64 = f[0].parse().unwrap();
        let force: f64 = f[7].parse().unwrap();
        assert!((state["pressure"].as_f64().unwrap() - p).abs() < 1e-6);
        assert!((state["contraction_force"].as_f64().unwrap() - force).abs() < 1e-6);
    }
}

#[test]
fn simulate_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("states.csv");
    let cfg = common::config("prototype.ini");
    let out = run(&["simulate", "--config", cfg.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let golden = std::fs::read_to_string(common::golden("prototype_simulate.csv")).unwrap();
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), golden);
}

#[test]
fn reference_grid_sweep_covers_all_cells() {
    let cfg = common::config("fem_study.ini");
    let text = stdout(&run(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--reference-grids",
        "--materials",
        "ecoflex-00-30,elastosil-m4601,smooth-sil-950",
        "--ratios",
        "1/5,1/4,1/3,1/2,1,3/2",
    ]));
    // 6 ratios over grids of 11, 16 and 11 points
    assert_eq!(text.lines().count() - 1, 6 * (11 + 16 + 11));
}

#[test]
fn unknown_material_is_input_error() {
    let cfg = common::config("prototype.ini");
    let out = run(&["sweep", "--config", cfg.to_str().unwrap(), "--materials", "latex"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flag_is_input_error() {
    assert_eq!(run(&["simulate", "--bogus"]).status.code(), Some(2));
}
