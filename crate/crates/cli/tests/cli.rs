use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn acscohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acscohom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = acscohom(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("acscohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn analyze_iwasawa_stage_one() {
    let (code, v) = json(&["analyze", "iwasawa", "--stage", "1", "--json"]);
    assert_eq!(code, 0);
    for key in [
        "manifold",
        "validity",
        "betti",
        "structures",
        "predicates",
        "cup_maps",
        "scan",
        "obstruction",
        "errors",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["validity"], "nilpotent");
    assert_eq!(v["betti"][1], 4);
    let stage = &v["structures"][0]["stages"][0];
    assert_eq!(stage["degree"], 1);
    assert_eq!(stage["complex_pure"], true);
    assert_eq!(stage["complex_full"], true);
}

#[test]
fn stage_two_carries_h_plus_and_minus() {
    let (code, v) = json(&["analyze", "n2", "--json"]);
    assert_eq!(code, 0);
    let stage = &v["structures"][0]["stages"][0];
    assert_eq!(stage["pure"], true);
    assert_eq!(stage["full"], false);
    assert_eq!(stage["h_plus"], 2);
    assert_eq!(stage["h_minus"], 2);
}

#[test]
fn obstruction_modes_disagree_on_n6() {
    let base = [
        "obstruction",
        "n6c1",
        "--alpha",
        "e14",
        "--direction",
        "b13",
        "--order",
        "1",
        "--json",
    ];
    let (code, v) = json(&[&base[..], &["--mode", "projected"]].concat());
    assert_eq!(code, 0);
    let o = &v["obstruction"][0];
    assert_eq!(o["solvable"], false);
    assert_eq!(o["mode"], "projected");
    assert!(!o["orders"][0]["certificate"].as_array().unwrap().is_empty());

    let (_, v) = json(&[&base[..], &["--mode", "paper-literal"]].concat());
    let o = &v["obstruction"][0];
    assert_eq!(o["solvable"], true);
    assert_eq!(o["orders"][0]["witness"].as_array().unwrap().len(), 1);
}

#[test]
fn scan_reports_drop_of_h_plus() {
    let (code, v) = json(&["scan", "s3t3", "--curve", "phi1", "--samples", "0,1/4 i", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["scan"][0]["h_plus"], 3);
    assert_eq!(v["scan"][1]["h_plus"], 1);
    assert_eq!(v["scan"][1]["t"], "1/4 i");
}

#[test]
fn cup_family_on_solv6() {
    let (code, v) = json(&["cup", "solv6", "--form", "omega_t", "--t", "1/5", "--json"]);
    assert_eq!(code, 0);
    let maps = v["cup_maps"].as_array().unwrap();
    assert_eq!(maps.len(), 3);
    assert!(maps.iter().all(|m| m["iso"] == true));
    assert_eq!(maps[0]["t"], "1/5");
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "predicates",
        "ft6",
        "--structure",
        "J",
        "--form",
        "omega",
        "--positivity",
        "e1234 + 2 e1256 - e3456",
        "--trials",
        "20",
        "--seed",
        "42",
        "--json",
    ];
    let a = acscohom(&args);
    let b = acscohom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_presentation_exits_two_without_output() {
    let path = scratch("bad.txt", "(0^2, 1x)\n");
    let out = acscohom(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["errors"][0]["kind"], "parse");
}

#[test]
fn unknown_names_exit_two() {
    assert_eq!(acscohom(&["analyze", "nosuch"]).status.code(), Some(2));
    assert_eq!(acscohom(&["zoo", "show", "nosuch"]).status.code(), Some(2));
    let out = acscohom(&["predicates", "n1", "--form", "missing_name"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(
        acscohom(&["obstruction", "n1", "--alpha", "e12", "--direction", "b13"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(
        acscohom(&[
            "obstruction",
            "n6c1",
            "--alpha",
            "e14",
            "--direction",
            "b13",
            "--mode",
            "other"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(acscohom(&["analyze", "n1", "--stage", "9"]).status.code(), Some(2));
}

#[test]
fn mathematical_errors_exit_one() {
    let (code, v) = json(&["predicates", "ft6", "--structure", "J", "--form", "e1", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["errors"][0]["kind"], "degree_mismatch");
    assert_eq!(v["errors"][0]["mathematical"], true);
    // The curve degenerates at t = 1.
    let (code, v) = json(&["scan", "etabeta5", "--curve", "phi1", "--samples", "1", "--json"]);
    assert_eq!(code, 0);
    assert!(v["scan"][0]["error"].is_string());
}

#[test]
fn custom_json_manifold() {
    let body = r#"{
        "name": "kt-custom",
        "presentation": "(0^2, 14, 12)",
        "structures": [{"name": "Jp", "pairs": [[1, 3], [2, 4]]}],
        "forms": [{"name": "w", "form": "e13 + e24"}]
    }"#;
    let path = scratch("kt.json", body);
    let (code, v) = json(&["predicates", path.to_str().unwrap(), "--form", "w", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["manifold"]["name"], "kt-custom");
    assert_eq!(v["validity"], "nilpotent");
    assert_eq!(v["predicates"][0]["nondegenerate"], true);
}

#[test]
fn zoo_commands() {
    let out = acscohom(&["zoo", "verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    let (code, v) = json(&["zoo", "list", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 11);
    let (code, v) = json(&["zoo", "show", "etabeta5", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["spec"]["mode"], "complex");
    assert!(v["expectations"].as_array().unwrap().len() >= 10);
}
