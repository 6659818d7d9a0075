use std::path::PathBuf;
use std::process::{Command, Output};

use dnzeta::report::Report;

fn dnzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dnzeta")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (Report, String, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = dnzeta(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let r: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (r, text, out.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dnzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn derive_a0_surface_functions() {
    let (r, _, code) = json_report(&["derive-a0", "--m", "3", "--q", "0"]);
    assert_eq!(code, 0);
    let a0 = &r.checks[0];
    assert!(a0.passed());
    assert_eq!(a0.expression.as_deref(), Some("(1/64)*pi^-1 * (tau_M - tau_Y + 11*H1^2 - 3*H2)"));
    assert_eq!(a0.expression, a0.expected_expression);
}

#[test]
fn derive_a0_every_degree() {
    for (m, q) in [("2", "0"), ("2", "1"), ("3", "1"), ("3", "2")] {
        for mode in ["abstract", "concrete"] {
            let (r, _, code) = json_report(&["derive-a0", "--m", m, "--q", q, "--mode", mode]);
            assert!(r.passed() && code == 0, "m = {m}, q = {q}, {mode}");
        }
    }
}

#[test]
fn derive_terms_has_every_row() {
    let (r, _, code) = json_report(&["derive-terms", "--q", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.checks.len(), 14);
    assert!(r.passed());
}

#[test]
fn verify_cylinder_example() {
    let (r, _, code) = json_report(&["verify-cylinder", "--a", "1", "--L", "6.283185307179586", "--q", "0"]);
    assert_eq!(code, 0);
    let res = r.checks.iter().find(|c| c.quantity == "gluing identity residual").unwrap();
    assert!(res.value.unwrap().abs() < 1e-10);
}

#[test]
fn geom_constants_from_file() {
    let path = scratch("unit-ball.json");
    let out = dnzeta(&["geom-export", "--builtin", "unit-ball", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let (r, _, code) = json_report(&["geom-constants", "--file", path.to_str().unwrap(), "--q", "0"]);
    assert_eq!(code, 0);
    let a0 = r.checks.iter().find(|c| c.quantity == "a0").unwrap();
    assert!((a0.value.unwrap() - 0.375).abs() < 1e-12);
}

#[test]
fn report_json_round_trips() {
    for args in [
        &["derive-a0", "--m", "2", "--q", "1"][..],
        &["verify-theorem28", "--a", "0.5", "--q", "1"],
        &["conformal-check"],
        &["specfun-selftest"],
    ] {
        let (r, text, _) = json_report(args);
        let again = serde_json::to_string_pretty(&r).unwrap();
        assert_eq!(again, text.trim_end(), "{args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("report.json");
    let out = dnzeta(&["--json", "--output", path.to_str().unwrap(), "verify-theorem28"]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), String::from_utf8(out.stdout).unwrap());
}

#[test]
fn text_output_names_status() {
    let out = dnzeta(&["specfun-selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.lines().any(|l| l.starts_with("PASS  zeta_R(0)")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn distinct_error_codes() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"m":2,"nodes":[{"w":1.0,"kappa":[1.0]}],"V":1.0,"ellY":3.0}"#).unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["geom-constants", "--file", "/nonexistent/geometry.json", "--q", "0"], 3),
        (&["geom-constants", "--file", bad.to_str().unwrap(), "--q", "0"], 4),
        (&["derive-a0", "--m", "3", "--q", "3"], 5),
        (&["derive-a0", "--m", "4", "--q", "0"], 5),
        (&["verify-cylinder", "--a", "-1"], 6),
        (&["conformal-check", "--f", "x2"], 6),
    ];
    for (args, code) in cases {
        let out = dnzeta(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error["));
    }
}

#[test]
fn precision_floor_is_enforced() {
    assert!(!dnzeta(&["--precision", "14", "specfun-selftest"]).status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_dnzeta"))
        .env("DNZETA_PRECISION", "15")
        .arg("verify-theorem28")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("value:    0.00000000000000e0"), "{text}");
}
