use std::process::Command;

use qes3body::cli::{execute_with_env, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    let mut full = vec!["qes3body"];
    full.extend_from_slice(args);
    execute_with_env(full, None)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, out.stdout))
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {}", name))
}

#[test]
fn verify_reports_every_check_and_only_curvature_fails() {
    let out = run(&["verify", "--samples", "12"]);
    let report = json(&out);
    assert_eq!(report["schema"], "qes3body/1");
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 25);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["oracle[curvature]"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("FAIL oracle[curvature]"));
    assert_eq!(check(&report, "commutator[delta_R(rho), L1]")["tag"], "Eq. (integral)");
    assert_eq!(check(&report, "commutator[delta_R(rho), L1]")["witness"], "0");
}

#[test]
fn verify_passes_once_curvature_tolerance_is_lifted() {
    let out = run(&["verify", "--samples", "8", "--tolerance", "curvature=10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(json(&out)["pass"].as_bool().unwrap());
}

#[test]
fn perturbed_laplacian_exposes_a_witness() {
    let out = run(&["verify", "--samples", "4", "--perturb", "--tolerance", "curvature=10"]);
    assert_eq!(out.code, 1);
    let report = json(&out);
    let c = check(&report, "commutator[delta_R(rho), L1]");
    assert_eq!(c["status"], "fail");
    assert_ne!(c["witness"], "0");
    assert!(out.stderr.contains("commutator[delta_R(rho), L1]"));
}

#[test]
fn explicit_masses_switch_the_mass_checks() {
    let out = run(&["verify", "--samples", "6", "--masses", "1,2,3"]);
    let report = json(&out);
    assert_eq!(check(&report, "mass_reduction[delta_R'(1,1,1) = delta_R]")["status"], "skipped");
    assert_eq!(check(&report, "mass_determinant")["status"], "pass");
    assert_eq!(report["masses"], serde_json::json!(["1/1", "2/1", "3/1"]));
}

#[test]
fn seeds_make_runs_reproducible() {
    let a = run(&["oracle", "--check", "reduction", "--samples", "6", "--seed", "7"]);
    let b = run(&["oracle", "--check", "reduction", "--samples", "6", "--seed", "7"]);
    assert_eq!(a, b);
    let env = execute_with_env(["qes3body", "oracle", "--check", "reduction", "--samples", "6"], Some("7"));
    assert_eq!(env, a);
    let other = run(&["oracle", "--check", "reduction", "--samples", "6", "--seed", "8"]);
    assert_ne!(other.stdout, a.stdout);
    assert_eq!(json(&a)["seed"], 7);
    let bad = execute_with_env(["qes3body", "oracle", "--check", "gauge"], Some("x"));
    assert_eq!(bad.code, 2);
}

#[test]
fn oracle_exit_codes_follow_the_verdict() {
    assert_eq!(run(&["oracle", "--check", "gauge", "--samples", "5"]).code, 0);
    let curv = run(&["oracle", "--check", "curvature", "--samples", "3"]);
    assert_eq!(curv.code, 1);
    assert_eq!(json(&curv)["pass"], false);
    assert_eq!(run(&["oracle", "--check", "nope"]).code, 2);
}

#[test]
fn spectrum_json_and_csv_agree() {
    let args = ["spectrum", "--N", "3", "--space", "p12", "--omega", "3/2", "--gamma", "1/2", "--A", "1/3"];
    let j = json(&run(&args));
    let mut csv_args = args.to_vec();
    csv_args.push("--csv");
    let csv = run(&csv_args);
    assert_eq!(csv.code, 0);
    let rows: Vec<&str> = csv.stdout.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(rows[0], "index,re,im,residual,exact,physical_energy,physical_energy_exact");
    let eig = j["eigenvalues"].as_array().unwrap();
    assert_eq!(rows.len() - 1, eig.len());
    assert_eq!(j["dimension"], 6);
    for (row, e) in rows[1..].iter().zip(eig) {
        let fields: Vec<&str> = row.split(',').collect();
        let re: f64 = fields[1].parse().unwrap();
        let from_json = e["re"].as_f64().unwrap();
        assert!((re - from_json).abs() <= 4.0 * f64::EPSILON * re.abs().max(1.0), "{} {}", re, from_json);
    }
}

#[test]
fn exactly_solvable_spectrum_is_exact() {
    let out = run(&["spectrum", "--N", "3", "--variant", "es", "--space", "p1"]);
    let j = json(&out);
    assert_eq!(j["physical_energies_exact"], serde_json::json!(["24/1", "36/1", "48/1", "60/1"]));
    assert_eq!(j["E0"], "24/1");
}

#[test]
fn spectrum_errors() {
    let formal = run(&["spectrum", "--N", "3/2"]);
    assert_eq!(formal.code, 1);
    assert!(formal.stderr.contains("invariance"), "{}", formal.stderr);
    assert_eq!(run(&["spectrum", "--N", "9", "--space", "p3"]).code, 2);
    assert_eq!(run(&["spectrum", "--omega", "0"]).code, 2);
    assert_eq!(run(&["spectrum", "--space", "p7"]).code, 2);
}

#[test]
fn geometry_reports_pointwise_quantities() {
    let j = json(&run(&["geometry", "--rho", "1,1,1"]));
    assert_eq!(j["det"], 54.0);
    assert_eq!(j["V_eff"], -0.125);
    assert!(j["w"]["w3"].is_null());
    let by_r = json(&run(&["geometry", "--r", "1,1,1"]));
    assert_eq!(by_r["rho"], j["rho"]);
    assert_eq!(run(&["geometry", "--rho", "1,1,9"]).code, 2);
    assert_eq!(run(&["geometry"]).code, 2);
}

#[test]
fn catalog_lists_operators_and_generators() {
    let j = json(&run(&["catalog"]));
    let ops = j["operators"].as_array().unwrap();
    assert!(ops.len() >= 14);
    assert_eq!(j["generator_sets"].as_array().unwrap().len(), 4);
    let l1 = ops.iter().find(|o| o["name"] == "L1(rho)").unwrap();
    assert_eq!(l1["tag"], "Eq. (integral)");
    assert!(l1["operator"]["terms"].is_array());
    let names = json(&run(&["catalog", "--list-operators"]));
    assert!(names["operators"][0]["operator"].is_null());
}

#[test]
fn help_and_usage() {
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["verify", "--tolerance", "nope=1"]).code, 2);
}

#[test]
fn binary_matches_library_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_qes3body"))
        .args(["spectrum", "--N", "2", "--space", "p1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lib = run(&["spectrum", "--N", "2", "--space", "p1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);
}
