//! The example algebras shipped in `corpus/`.

use crate::spec_file::{parse_spec, Parsed, SpecError};

pub const SPECS: &[(&str, &str)] = &[
    ("sl2", include_str!("../corpus/sl2.spec")),
    ("sl2-broken", include_str!("../corpus/sl2-broken.spec")),
    ("aff1", include_str!("../corpus/aff1.spec")),
    ("heis3", include_str!("../corpus/heis3.spec")),
    ("ab-ext", include_str!("../corpus/ab-ext.spec")),
    ("heis3-ext", include_str!("../corpus/heis3-ext.spec")),
    ("ad-inner", include_str!("../corpus/ad-inner.spec")),
    ("t1-r2", include_str!("../corpus/t1-r2.spec")),
    ("t1-heis3", include_str!("../corpus/t1-heis3.spec")),
    ("two-term", include_str!("../corpus/two-term.spec")),
    ("ce-sl2", include_str!("../corpus/ce-sl2.spec")),
    ("ce-two-term", include_str!("../corpus/ce-two-term.spec")),
];

pub const DERIVATIONS: &[(&str, &str)] = &[("heis3-grading", include_str!("../corpus/heis3-grading.deriv"))];

/// Differential graded pairs with a nilpotent degree-0 part, the inputs of
/// the integration pipeline.
pub const PAIRS: &[&str] = &["ab-ext", "heis3-ext", "t1-r2", "t1-heis3", "ce-sl2", "ce-two-term"];

pub fn source(name: &str) -> Option<&'static str> {
    SPECS.iter().chain(DERIVATIONS).find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a corpus spec; panics on an unknown name.
pub fn load(name: &str) -> Result<Parsed, SpecError> {
    parse_spec(source(name).unwrap_or_else(|| panic!("no corpus entry {name}")))
}
