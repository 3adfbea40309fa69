use std::path::PathBuf;
use std::process::Command;

use dglg::commands;
use dglg::corpus::{self, source};
use dglg::suites::Suite;

fn corpus_path(file: &str) -> String {
    format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn dglg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dglg")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("dglg-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = dglg(&["validate", &corpus_path("sl2.spec")]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = dglg(&["validate", &corpus_path("sl2-broken.spec")]);
    assert_eq!(code, 1);
    assert!(out.contains("jacobi: FAIL [witness: (h, e, f)"), "{out}");
    let bad = source("sl2").unwrap().replace("[[\"h\", \"1\"]]", "[[\"h\", \"1/0\"]]");
    let p = temp_file("zero-den.spec", &bad);
    let (code, out, err) = dglg(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 29, column 16") && err.contains("zero denominator"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let (code, _, err) = dglg(&["validate", "/nonexistent/x.spec"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/x.spec"));
}

#[test]
fn ce_reports() {
    let o = commands::ce(source("sl2").unwrap(), None);
    assert!(o.stdout.contains("hopf_axioms: PASS\n"));
    assert!(o.stdout.contains("Q_squared: PASS\n"));
    assert!(o.stdout.contains("Q_multiplicative: FAIL"));
    let o = commands::ce(source("two-term").unwrap(), None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let two_sided = "name = \"x\"\n\n[[generators]]\nname = \"u\"\ndegree = -1\n\n[[generators]]\nname = \"w\"\ndegree = 1\n";
    let o = commands::ce(two_sided, None);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("one-sided") || o.stderr.contains("grading"), "{}", o.stderr);
    let o = commands::ce(source("sl2-broken").unwrap(), None);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("jacobi: FAIL"));
}

#[test]
fn integrate_reports() {
    let o = commands::integrate(source("ab-ext").unwrap(), None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("delta_Q == partial: PASS\n"));
    assert!(o.stdout.contains("Q_squared: PASS\n"));
    assert!(o.stdout.contains("extended_agreement: PASS\n"));
    let o = commands::integrate(source("sl2").unwrap(), None);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty() && o.stderr.contains("nilpotent"), "{}", o.stderr);
    let o = commands::integrate(source("heis3-ext").unwrap(), Some(3));
    assert_eq!(o.code, 0, "{}", o.stdout);
}

#[test]
fn declared_class_is_checked() {
    let wrong = source("heis3").unwrap().replace("nilpotency_class = 2", "nilpotency_class = 3");
    let o = commands::integrate(&wrong, None);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("declared nilpotency class 3, found 2"), "{}", o.stderr);
    assert_eq!(commands::integrate(source("heis3").unwrap(), None).code, 0);
}

#[test]
fn vanest_reports() {
    let (code, out, _) =
        dglg(&["vanest", &corpus_path("heis3.spec"), "--derivation", &corpus_path("heis3-grading.deriv")]);
    assert_eq!(code, 0);
    assert!(out.contains("cocycle: PASS\n") && out.contains("round_trip: PASS\n"), "{out}");
    // Z ↦ X is not a derivation of the Heisenberg algebra
    let o = commands::vanest(source("heis3").unwrap(), "name = \"bad\"\n\n[derivation]\nZ = [[\"X\", \"1\"]]\n");
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("derivation: FAIL"));
    let o = commands::vanest(source("heis3").unwrap(), "name = \"bad\"\n\n[derivation]\nQ = [[\"Y\", \"1\"]]\n");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 4, column 1"), "{}", o.stderr);
}

#[test]
fn check_suites_run_from_the_cli() {
    let (code, out, _) = dglg(&["check", &corpus_path("heis3.spec"), "--suite", "vanest"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 12);
    let (code, out, _) = dglg(&["check", &corpus_path("aff1.spec"), "--suite", "jacobi"]);
    assert_eq!(code, 1);
    assert!(out.contains("mutant_found: FAIL"));
    let (code, _, err) = dglg(&["check", &corpus_path("aff1.spec"), "--suite", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
    let o = commands::check(source("ab-ext").unwrap(), Suite::Hopf, Some(3));
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("pair.antipode"));
}

#[test]
fn fmt_is_canonical_on_corpus() {
    for (name, src) in corpus::SPECS {
        let o = commands::fmt(src);
        assert_eq!(o.stdout, *src, "{name}");
    }
    // brackets given in the opposite order are rewritten
    let flipped = source("sl2").unwrap().replace("x = \"e\"\ny = \"f\"\nterms = [[\"h\", \"1\"]]", "x = \"f\"\ny = \"e\"\nterms = [[\"h\", \"-1\"]]");
    assert_ne!(flipped, source("sl2").unwrap());
    assert_eq!(commands::fmt(&flipped).stdout, source("sl2").unwrap());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let p = corpus_path("t1-heis3.spec");
    let a = dglg(&["integrate", &p]);
    let b = dglg(&["integrate", &p]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}
