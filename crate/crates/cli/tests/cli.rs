use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn minkgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minkgeo"))
        .args(args)
        .env_remove("MINKGEO_JOBS")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = minkgeo(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn number(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("{v} is not a number"))
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn null_vector_is_lightlike() {
    let r = report(&["classify", "vector", "--sig", "3,1", "--coords", "1,0,1"]);
    assert_eq!(r["class"], "lightlike");
}

#[test]
fn boost_fixture_is_orthochronous_proper() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "boost.json");
    let (c, s) = (1.0f64.cosh(), 1.0f64.sinh());
    let m = serde_json::json!({ "matrix": [[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]], "signature": [3, 1] });
    std::fs::write(&file, m.to_string()).unwrap();
    let r = report(&["classify", "transform", "--file", &file]);
    assert_eq!(r["member"], true);
    assert_eq!(r["component"], "plus_up");
    assert_eq!(r["conjugacy"], "hyperbolic");
    assert!((number(&r["angle"]) - 1.0).abs() < 1e-12);
}

#[test]
fn future_event_is_chronologically_related() {
    let r = report(&["classify", "relation", "--p", "0,0,0", "--q", "0,0,1"]);
    assert_eq!(r["chron"], true);
}

#[test]
fn gamma2_reports_its_pseudo_torsion_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "g2.csv");
    let r = report(&["curve", "named", "gamma2", "--r", "1", "--range", "0,10", "--step", "0.01", "-o", &csv]);
    assert!((number(&r["ctorsion"]) + 0.5).abs() < 1e-9);
    assert_eq!(r["frame"], "cartan");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1002);
}

#[test]
fn horocycle_has_vanishing_pseudo_torsion() {
    let r = report(&["curve", "named", "horocycle", "--c", "-1", "--range", "0,2", "--step", "0.1"]);
    assert!(number(&r["ctorsion"]).abs() < 1e-9);
    assert_eq!(r["helix_type"], "parabolic");
}

#[test]
fn flat_lightlike_reconstruction_is_a_cubic_curve() {
    let r = report(&["curve", "reconstruct", "--kind", "lightlike", "--ctorsion", "const:0", "--range", "0,2", "--step", "0.01"]);
    // T(0) = (0,h,h), N(0) = (-1,0,0), B(0) = (0,-h,h) with T' = N, N' = B, B' = 0.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 2.0f64;
    let expected = [-t * t / 2.0, h * t - h * t.powi(3) / 6.0, h * t + h * t.powi(3) / 6.0];
    for (got, want) in r["end_point"].as_array().unwrap().iter().zip(expected) {
        assert!((number(got) - want).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn de_sitter_mesh_and_curvatures() {
    let dir = tempfile::tempdir().unwrap();
    let obj = path(dir.path(), "s21.obj");
    let r = report(&["surface", "named", "de-sitter", "--grid", "64x64", "-o", &obj]);
    assert!((number(&r["K"]["mean"]) - 1.0).abs() < 1e-6);
    assert!((number(&r["H"]["mean"]) + 1.0).abs() < 1e-6);
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 65 * 65);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 64 * 64);
}

#[test]
fn enneper_data_file_is_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let data = path(dir.path(), "enneper_r3.json");
    std::fs::write(&data, r#"{"ambient": "r3", "f": "one", "g": "identity", "domain": {"u": [-1, 1], "v": [-1, 1]}}"#)
        .unwrap();
    let obj = path(dir.path(), "enneper.obj");
    let r = report(&["surface", "weierstrass", "--data", &data, "--grid", "16x16", "-o", &obj]);
    assert!(number(&r["maxH"]) < 1e-6);
    assert!(Path::new(&obj).exists());
}

#[test]
fn gallery_entries_generate() {
    for name in ["catalan_r3", "henneberg_r3", "enneper_l3_timelike", "catenoid_l3_spacelike"] {
        let r = report(&["surface", "weierstrass", "--named", name, "--grid", "8x8"]);
        assert!(number(&r["maxH"]) < 1e-6, "{name}: {r}");
    }
}

#[test]
fn b_scroll_identities_hold() {
    let r = report(&["surface", "bscroll", "--curve", "gamma2", "--r", "1", "--trange", "-1,1", "--grid", "16x16"]);
    assert!(number(&r["K_residual"]) < 1e-9);
    assert!(number(&r["H_residual"]) < 1e-9);
    assert_eq!(r["diagnosis_mismatches"], 0);
}

#[test]
fn revolution_profile_has_unit_curvature() {
    let r = report(&["surface", "revolution", "--profile", "index-two", "--grid", "8x8"]);
    assert!(number(&r["constant_k"]["curvature_error"]) < 1e-9);
}

#[test]
fn fermi_chart_matches_the_constant_curvature_metric() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "fermi.csv");
    let r = report(&["surface", "fermi", "--model", "sphere", "-o", &csv]);
    assert!(number(&r["max_G_error"]) < 1e-8);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("u,v,E,F,G"));
}

#[test]
fn parse_errors_exit_with_two() {
    for args in [
        &["classify", "vector", "--sig", "3,1", "--coords", "1,x,1"][..],
        &["classify", "vector", "--sig", "3,1", "--coords", "1,0"],
        &["surface", "named", "sphere", "--grid", "1x4"],
        &["surface", "weierstrass", "--named", "nope"],
        &["curve", "named", "gamma2", "--step", "0"],
    ] {
        let out = minkgeo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn precondition_violations_exit_with_three() {
    let out = minkgeo(&["classify", "vector", "--sig", "3,1", "--coords", "1,0,1", "--tol", "1e-3"]);
    assert!(out.status.success());
    let out = minkgeo(&["curve", "named", "gamma2", "--r=-1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn jobs_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_minkgeo"))
        .args(["classify", "vector", "--sig", "3,1", "--coords", "1,0,1"])
        .env("MINKGEO_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_minkgeo"))
        .args(["classify", "vector", "--sig", "3,1", "--coords", "1,0,1"])
        .env("MINKGEO_JOBS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn outputs_are_byte_identical_across_runs_and_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut seen = Vec::new();
    for jobs in ["1", "4", "4"] {
        let obj = path(dir.path(), &format!("m{}.obj", seen.len()));
        let csv = path(dir.path(), &format!("m{}.csv", seen.len()));
        let out = minkgeo(&[
            "--jobs", jobs, "surface", "weierstrass", "--named", "henneberg_r3", "--grid", "12x12", "-o", &obj, "--csv", &csv,
        ]);
        assert!(out.status.success());
        seen.push((out.stdout, std::fs::read(&obj).unwrap(), std::fs::read(&csv).unwrap()));
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}
