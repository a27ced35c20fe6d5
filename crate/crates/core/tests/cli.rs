//! End-to-end runs of the binary: exit codes, report contents, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use hodge_covers::cli::{exit_code, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_INVARIANT};
use hodge_covers::Error;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-covers")).args(args).output().expect("binary runs")
}

fn run_fixture(args: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn five_lines_license_ghc() {
    let out = run_fixture(&["analyze"], "five_lines_d5.json");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("GHC: licensed (d prime, condition (b) equality)"), "{text}");
    assert!(text.contains("Hodge-cycle bound (i=2, k=0): 0"), "{text}");
}

#[test]
fn concurrent_lines_exit_2_with_report() {
    let out = run_fixture(&["--format", "json", "analyze"], "concurrent_lines_d3.json");
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["exit_code"], 2);
    assert!(!v["output"].is_null(), "report is still emitted");
    assert_eq!(v["output"]["hypotheses"]["normal_crossing"], false);
}

#[test]
fn malformed_input_names_line_and_field() {
    let out = run_fixture(&["analyze"], "malformed_rational.json");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("malformed_rational.json:6:31"), "{err}");
    assert!(err.contains("arrangement.hyperplanes[1].normal[1]"), "{err}");
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["bound", "--level", "x"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_of_scale_local_model_exits_3() {
    assert_eq!(run(&["local", "--exponents", "1,1", "--degree", "13"]).status.code(), Some(3));
    assert_eq!(run(&["local", "--gamma", "1,2;2,4"]).status.code(), Some(3));
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(exit_code(&Error::Hypothesis("x".into())), EXIT_HYPOTHESIS);
    assert_eq!(exit_code(&Error::Invariant("x".into())), EXIT_INVARIANT);
    assert_eq!(exit_code(&Error::Argument("x".into())), EXIT_INPUT);
}

#[test]
fn six_lines_antidiagonal() {
    let v = json(&run_fixture(&["--format", "json", "hodge"], "six_lines_d6.json"));
    let blocks = v["output"]["blocks"].as_array().unwrap();
    for k in 0..=2usize {
        let sum: i64 = blocks
            .iter()
            .filter(|b| b["character"] != "eps^0")
            .map(|b| b["h"][k][2 - k].as_i64().unwrap())
            .sum();
        // C(5, 3)
        assert_eq!(sum, 10, "k = {k}");
    }
    assert_eq!(v["output"]["nontrivial_total"], 30);
}

#[test]
fn routes_agree_on_every_fixture() {
    for name in [
        "five_lines_d5.json",
        "four_lines_d4.json",
        "six_lines_d6.json",
        "genus_one.json",
        "weighted_lines_d5.json",
        "fermat_surface_product.json",
        "klein_four_curve.json",
    ] {
        let out = run_fixture(&["--format", "json", "hodge"], name);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v = json(&out);
        assert_ne!(v["output"]["routes_agree"], false, "{name}");
        assert_eq!(v["output"]["euler_agree"], true, "{name}");
    }
}

#[test]
fn euler_and_bound_values() {
    let v = json(&run_fixture(&["--format", "json", "euler"], "four_lines_d4.json"));
    assert_eq!(v["output"]["euler_cover"], 6);
    assert_eq!(v["output"]["dim_h_nt"], 3);

    let v = json(&run_fixture(&["--format", "json", "bound"], "five_lines_d5.json"));
    assert_eq!(v["output"]["bound"], 0);
    assert_eq!(v["output"]["alternative_raw"], -8);

    let v = json(&run_fixture(&["--format", "json", "bound"], "four_lines_d4.json"));
    assert_eq!(v["output"]["bound"], 1);
}

#[test]
fn local_models() {
    let v = json(&run(&["--format", "json", "local", "--exponents", "2", "--degree", "3"]));
    assert_eq!(v["exit_code"], 0);
    let text = stdout(&run(&["local", "--exponents", "2,2", "--degree", "4"]));
    assert!(text.contains("reduced model (1,1; 2)"), "{text}");
    assert!(text.contains("group order 2"), "{text}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(&["--format", "json", "--sweep", "d=2..6,n=1..3", "analyze"]);
    let b = run(&["--format", "json", "--sweep", "d=2..6,n=1..3", "analyze"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run_fixture(&["--format", "json", "analyze"], "six_lines_d6.json");
    let d = run_fixture(&["--format", "json", "analyze"], "six_lines_d6.json");
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn resolved_input_is_echoed() {
    let v = json(&run_fixture(&["--format", "json", "analyze"], "weighted_lines_d5.json"));
    let input = &v["input"];
    assert_eq!(input["base"]["type"], "projective_space");
    let mult: Vec<i64> =
        input["arrangement"]["hyperplanes"].as_array().unwrap().iter().map(|h| h["multiplicity"].as_i64().unwrap()).collect();
    assert_eq!(mult, vec![2, 1, 3, 4]);
    // defaults are filled in
    assert!(input["monodromy"].is_array());
}

#[test]
fn selftest_passes() {
    let out = run(&["--seed", "3", "selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
