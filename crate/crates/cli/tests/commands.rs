use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

fn orbchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbchar"))
        .args(args)
        .env_remove("ORBCHAR_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    model(name).to_string_lossy().into_owned()
}

#[test]
fn chi_of_point_and_circle() {
    let out = orbchar(&["chi", &path("point.json"), "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["euler_characteristic"], 1);

    let out = orbchar(&["chi", &path("circle.json"), "--format", "json"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["euler_characteristic"], 0);
    assert_eq!(report["integral"], "5/2");
}

#[test]
fn malformed_json_reports_position() {
    let dir = std::env::temp_dir().join(format!("orbchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"strata\": [\n  {\"label\": \"p\",\n").unwrap();
    let out = orbchar(&["chi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = orbchar(&["chi", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn teardrop_invariants() {
    let out = orbchar(&["invariants", &path("teardrop-z5.json"), "--format", "json"]);
    assert!(out.status.success());
    let r = json_of(&out);
    assert_eq!(r["chi_un"], "T[Z/5] + 1");
    assert_eq!(r["chi_gamma"], 6);
    assert_eq!(r["chi_es"], "6/5");
    assert_eq!(r["gamma"], "Z");
}

#[test]
fn commuting_pairs_in_s3() {
    let out = orbchar(&["invariants", &path("s3-point.json"), "--gamma", "Z^2", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["chi_gamma"], 8);
}

#[test]
fn su2_point_over_z() {
    let out = orbchar(&["invariants", &path("su2-point.json"), "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["chi_gamma"], 1);
}

#[test]
fn unsupported_gamma_for_lie_isotropy_fails() {
    let out = orbchar(&["invariants", &path("su2-point.json"), "--gamma", "Z^2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gamma_from_presentation_file() {
    let out = orbchar(&[
        "invariants",
        &path("s3-point.json"),
        "--gamma",
        &path("klein-bottle-gamma.json"),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["gamma"]["generators"], 2);
}

#[test]
fn bad_gamma_is_a_usage_error() {
    let out = orbchar(&["invariants", &path("s3-point.json"), "--gamma", "Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gauss_bonnet_scenarios() {
    for (name, expected) in [("s2-in-r3", 2.0), ("point-in-r2", 1.0)] {
        let out = orbchar(&["gb", name, "--format", "json"]);
        assert!(out.status.success(), "{name}");
        let r = json_of(&out);
        assert_eq!(r["scenario"], name);
        assert!((r["value"].as_f64().unwrap() - expected).abs() <= 0.02);
    }
}

#[test]
fn unknown_scenario_lists_the_known_ones() {
    let out = orbchar(&["gb", "torus-in-r3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("s2-in-r3") && err.contains("gb1-su2"), "{err}");
}

#[test]
fn impossible_tolerance_fails_the_check() {
    let out = orbchar(&["gb", "s2-in-r3", "--grid", "4", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let a = orbchar(&["selftest", "--seed", "11", "--cases", "30", "--format", "json"]);
    let b = orbchar(&["selftest", "--seed", "11", "--cases", "30", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["ok"], true);
}

#[test]
fn injected_fault_names_the_property() {
    let out = orbchar(&["selftest", "--inject-fault", "flip-euler-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cell multiplicativity"), "{err}");
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_orbchar"))
        .args(["selftest", "--cases", "5"])
        .env("ORBCHAR_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_orbchar"))
        .args(["selftest", "--cases", "5"])
        .env("ORBCHAR_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(orbchar(&["chi", "--bogus"]).status.code(), Some(2));
    assert_eq!(orbchar(&[]).status.code(), Some(2));
}
