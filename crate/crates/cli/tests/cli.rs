use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diraclie")).args(args).output().expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn sl2_satisfies_jacobi() {
    let r = report(&["algebra", "check", &fixture("sl2.json")], 0);
    assert_eq!(r["pass"], true);
    assert_eq!(r["details"]["center"], serde_json::json!([]));
}

#[test]
fn tampered_sl2_reports_its_jacobi_triple() {
    let r = report(&["algebra", "check", &fixture("bad_jacobi.json")], 1);
    let c = check(&r, "jacobi");
    assert_eq!(c["pass"], false);
    assert_eq!(c["witness"]["triple"], serde_json::json!([0, 1, 2]));
    assert_eq!(c["witness"]["jacobiator"], serde_json::json!(["0", "-2", "0"]));
}

#[test]
fn malformed_input_exits_with_code_2() {
    let out = run(&["algebra", "check", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(run(&["algebra", "check", &fixture("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["mult", "check", &fixture("sl2.json")]).status.code(), Some(2));
}

#[test]
fn r3_counterexample_is_a_cocycle_but_not_integrable() {
    let r = report(&["mult", "check", &fixture("r3_counterexample.json")], 0);
    for name in ["cocycle", "ppart_identity", "gpart_identity"] {
        assert_eq!(check(&r, name)["pass"], true, "{name}");
    }
    let n = check(&r, "n_invariance");
    assert_eq!(n["pass"], false);
    assert_eq!(n["witness"]["pair"], serde_json::json!([0, 1]));
    assert_eq!(n["witness"]["value"], serde_json::json!(["0", "0", "-1"]));
    assert_eq!(check(&r, "integrable")["pass"], false);
    assert_eq!(r["details"]["double"], Value::Null);
}

#[test]
fn sl2_bialgebra_and_trivial_data_pass() {
    for name in ["sl2_standard_bialgebra.json", "trivial_poisson_sl2.json"] {
        let r = report(&["mult", "check", &fixture(name)], 0);
        assert_eq!(r["details"]["double"]["dim"], 6, "{name}");
    }
}

#[test]
fn borel_candidate_is_integrable_homogeneous() {
    let r = report(&["homog", "classify", &fixture("sl2_borel_candidate.json")], 0);
    assert_eq!(r["details"]["homogeneous"], true);
    assert_eq!(r["details"]["integrable"], true);
    for c in r["checks"].as_array().unwrap() {
        assert!(c["criterion"].is_string());
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn torus_surrogate_passes_every_stage() {
    let r = report(&["homog", "classify", &fixture("t4r_surrogate.json")], 0);
    assert_eq!(check(&r, "sandwich")["pass"], true);
    assert_eq!(r["details"]["integrable"], true);
}

#[test]
fn search_respects_its_limit() {
    let out = run(&["homog", "search", &fixture("abelian2_search.json"), "--limit", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&["homog", "search", &fixture("abelian2_search.json")], 0);
    let d = &r["details"];
    assert_eq!(d["grid_size"], 8);
    assert_eq!(d["hits"].as_array().unwrap().len() as u64, d["homogeneous_count"].as_u64().unwrap());
}

#[test]
fn dirac_check_with_and_without_algebra() {
    let r = report(&["dirac", "check", &fixture("poisson_r2.json")], 0);
    assert_eq!(r["details"]["g0"], serde_json::json!([]));
    let out = run(&["dirac", "check", &fixture("poisson_r2.json"), "--algebra", &fixture("sl2.json")]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&["dirac", "check", &fixture("borel_dirac.json"), "--algebra", &fixture("sl2.json")], 0);
    assert_eq!(check(&r, "cyclic_integrability")["pass"], true);
    assert_eq!(check(&r, "courant_closure")["pass"], true);
}

#[test]
fn props_pass_for_a_few_seeds() {
    for seed in ["0", "1", "17"] {
        let r = report(&["props", "--seed", seed, "--cases", "10"], 0);
        assert_eq!(r["checks"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["homog", "search", &fixture("abelian2_search.json")],
        vec!["props", "--seed", "3", "--cases", "5"],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn markdown_report() {
    let out = run(&["--md", "mult", "check", &fixture("r3_counterexample.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# mult check\n"));
    assert!(text.contains("Result: **pass**"));
    assert!(text.contains("| n_invariance |  | FAIL |"));
    assert!(text.contains("## Details"));
}

#[test]
fn candidate_missing_h_fails_the_sandwich() {
    let r = report(&["homog", "classify", &fixture("sl2_bad_candidate.json")], 1);
    assert_eq!(check(&r, "lagrangian")["pass"], true);
    let s = check(&r, "sandwich");
    assert_eq!(s["witness"]["kind"], "missing_vector");
    assert_eq!(s["witness"]["vector"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(check(&r, "h_invariance")["witness"]["skipped"], "quotient_lagrangian failed");
}

#[test]
fn mult_check_fails_for_a_non_cocycle() {
    let r = report(&["mult", "check", &fixture("upper_triangular_non_cocycle.json")], 1);
    assert_eq!(check(&r, "cocycle")["pass"], false);
    assert!(check(&r, "cocycle")["witness"]["pair"].is_array());
}
