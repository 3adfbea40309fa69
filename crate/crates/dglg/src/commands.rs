//! Commands on spec sources. Each returns the report text and an exit code:
//! 0 when every line passes, 1 on a failed check or an unsupported input,
//! 2 on a parse error.

use dglg_core::dgla::{check_dgla, DglaSpec};
use dglg_core::hcp::{ce_group, ce_report, extended_route, integrate as integrate_pair};
use dglg_core::nilgroup::{nilpotency_class, NilpotentGroup};
use dglg_core::report::Report;

use crate::spec_file::{parse_derivation, parse_spec, Parsed};
use crate::suites::{self, Suite};

/// Largest class accepted when checking a declared nilpotency class.
pub const MAX_CLASS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(r: &Report) -> Self {
        Outcome { code: if r.all_pass() { 0 } else { 1 }, stdout: r.to_string(), stderr: String::new() }
    }

    fn error(code: i32, msg: impl Into<String>) -> Self {
        let mut m = msg.into();
        m.push('\n');
        Outcome { code, stdout: String::new(), stderr: m }
    }
}

/// Parsed and validated input, or the outcome to return instead.
fn validated(src: &str) -> Result<Parsed, Outcome> {
    let p = parse_spec(src).map_err(|e| Outcome::error(2, format!("parse error: {e}")))?;
    let r = check_dgla(&p.spec);
    if !r.all_pass() {
        let mut o = Outcome::report(&r);
        o.stderr = String::from("spec does not define a DGLA\n");
        return Err(o);
    }
    Ok(p)
}

fn degree_zero_part(spec: &DglaSpec) -> DglaSpec {
    spec.restrict(&spec.degree_zero_part())
}

/// Compares a declared nilpotency class with the one found for `g_0`.
fn check_class(p: &Parsed) -> Result<(), Outcome> {
    let Some(declared) = p.file.nilpotency_class else { return Ok(()) };
    match nilpotency_class(&degree_zero_part(&p.spec), MAX_CLASS) {
        Some(c) if c == declared => Ok(()),
        Some(c) => Err(Outcome::error(1, format!("declared nilpotency class {declared}, found {c}"))),
        None => Err(Outcome::error(1, format!("degree-0 part is not nilpotent of class ≤ {MAX_CLASS}"))),
    }
}

pub fn validate(src: &str) -> Outcome {
    match parse_spec(src) {
        Ok(p) => Outcome::report(&check_dgla(&p.spec)),
        Err(e) => Outcome::error(2, format!("parse error: {e}")),
    }
}

pub fn ce(src: &str, weight: Option<u32>) -> Outcome {
    let p = match validated(src) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let w = weight.unwrap_or(p.file.truncation_weight);
    match ce_group(&p.spec, w) {
        Ok(g) => Outcome::report(&ce_report(&g)),
        Err(e) => Outcome::error(1, format!("ce: {e}")),
    }
}

pub fn integrate(src: &str, weight: Option<u32>) -> Outcome {
    let p = match validated(src).and_then(|p| check_class(&p).map(|_| p)) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let w = weight.unwrap_or(p.file.truncation_weight);
    let res = match integrate_pair(&p.spec, w) {
        Ok(res) => res,
        Err(e) => return Outcome::error(1, format!("integrate: {e}")),
    };
    let mut r = res.report;
    match extended_route(&p.spec, w) {
        Ok(ext) => r.extend(ext),
        Err(e) => r.fail("extended_route", e.to_string()),
    }
    Outcome::report(&r)
}

pub fn vanest(src: &str, derivation_src: &str) -> Outcome {
    let p = match validated(src).and_then(|p| check_class(&p).map(|_| p)) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let delta = match parse_derivation(derivation_src, &p.spec) {
        Ok((_, d)) => d,
        Err(e) => return Outcome::error(2, format!("parse error in derivation: {e}")),
    };
    let g = match p.file.nilpotency_class {
        Some(c) => NilpotentGroup::with_declared_class(p.spec.clone(), c),
        None => NilpotentGroup::new(p.spec.clone()),
    };
    match g {
        Ok(g) => Outcome::report(&suites::vanest_report(&g, &delta)),
        Err(e) => Outcome::error(1, format!("vanest: {e}")),
    }
}

pub fn check(src: &str, suite: Suite, weight: Option<u32>) -> Outcome {
    let p = match validated(src) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let w = weight.unwrap_or(p.file.truncation_weight);
    Outcome::report(&suites::run(suite, &p.spec, w))
}

/// Canonical serialization of the parsed algebra.
pub fn fmt(src: &str) -> Outcome {
    match parse_spec(src) {
        Ok(p) => Outcome { code: 0, stdout: p.file.canonical(&p.spec).to_toml(), stderr: String::new() },
        Err(e) => Outcome::error(2, format!("parse error: {e}")),
    }
}
