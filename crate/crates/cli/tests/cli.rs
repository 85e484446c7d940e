use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn crystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystal")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_group_algebra_passes() {
    let o = crystal(&["validate", fixture("kz2_gf2.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("| antipode | pass |"));
}

#[test]
fn validate_broken_associativity_reports_witness() {
    let o = crystal(&["validate", fixture("broken_assoc.json").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("| associativity | FAIL | [0, 1, 1] |"), "{}", stdout(&o));
}

#[test]
fn malformed_json_is_an_input_error() {
    let o = crystal(&["validate", fixture("malformed.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = crystal(&["analyze", fixture("does_not_exist.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn window_cap_exhaustion_is_a_resource_error() {
    let o = crystal(&["analyze", fixture("semidirect_gf2.json").to_str().unwrap(), "--window-cap", "1"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
}

#[test]
fn analyze_enveloping_line() {
    let o = crystal(&["analyze", fixture("u_line_gf2.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("(u(g)_t)^∨ = u(g)[t] layer by layer | pass"));
    assert!(s.contains("ũ(g) = S(g)/(x^p) | pass"));
}

#[test]
fn analyze_semidirect_diagram() {
    let o = crystal(&["analyze", fixture("semidirect_gf2.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("Ĥ [8]  <--t=0--  (H^∨)_t  --t=1-->  H^∨ [8]"));
    assert!(s.contains("H̃ [1]"));
    assert!(!s.contains("FAIL"));
}

#[test]
fn trivial_group_all_corners_one() {
    let o = crystal(&["group", "--family", "trivial"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("Ĥ [1]") && s.contains("H^∨ [1]") && s.contains("H̃ [1]") && s.contains("H′ [1]"));
}

#[test]
fn jennings_pipeline_semidirect() {
    let o = crystal(&["group", "--family", "Zp_semidirect_Zp2", "--p", "2", "--pipeline", "jennings"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("[x̄_tau, x̄_nu] = x̄_tau^2"));
    assert!(s.contains("x̄_tau^[p] = x̄_tau^2"));
}

#[test]
fn crystal_pipeline_positional_family_args() {
    let o = crystal(&["group", "--family", "Zp_powers", "2", "2,1", "--pipeline", "crystal"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("k[x]/(x1^4, x2^2), degree profile [1, 2, 2, 2, 1]"));
}

#[test]
fn dual_pipeline_from_file() {
    let o = crystal(&["group", fixture("s3_perm.json").to_str().unwrap(), "--pipeline", "dual"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn pairing_file() {
    let o = crystal(&["pair", fixture("pair_z2_gf2.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("D_n = (J^(n+1))^⊥ | pass"));
}

#[test]
fn json_output_is_deterministic_across_jobs() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("crystal-cli-a-{}.json", std::process::id()));
    let b = dir.join(format!("crystal-cli-b-{}.json", std::process::id()));
    let inputs = ["kz2_gf2.json", "u_affine_gf2.json", "idempotent_monoid_gf3.json"].map(|f| fixture(f).to_str().unwrap().to_string());
    let mut args1 = vec!["--json", a.to_str().unwrap(), "--seed", "7", "analyze"];
    args1.extend(inputs.iter().map(String::as_str));
    let mut args2 = vec!["--jobs", "3", "--json", b.to_str().unwrap(), "--seed", "7", "analyze"];
    args2.extend(inputs.iter().map(String::as_str));
    assert_eq!(code(&crystal(&args1)), 0);
    assert_eq!(code(&crystal(&args2)), 0);
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["seed"], 7);
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}
