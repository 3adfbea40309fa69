//! TOML spec files.
//!
//! ```toml
//! name = "ab-ext"
//! truncation_weight = 4
//!
//! [[generators]]
//! name = "a"
//! degree = 0
//!
//! [[generators]]
//! name = "b"
//! degree = 1
//!
//! [[brackets]]
//! x = "e"
//! y = "f"
//! terms = [["h", "1"]]
//!
//! [differential]
//! a = [["b", "1"]]
//! ```
//!
//! Generators are listed in basis order. Coefficients are strings `"p"` or
//! `"p/q"`. `nilpotency_class` is optional and checked against the inferred
//! class when present; `truncation_weight` defaults to 4. Derivation files for
//! `vanest` carry a `name` and a `[derivation]` table shaped like
//! `[differential]`.

use std::collections::BTreeMap;
use std::ops::Range;

use dglg_core::dgla::{DglaError, DglaSpec};
use dglg_core::grading::{Degree, GradedBasis, GradedLinearMap, Vector};
use dglg_core::scalar::{parse_rational, render};
use serde::{Deserialize, Serialize};
use toml::Spanned;

pub const DEFAULT_WEIGHT: u32 = 4;

/// `(generator, coefficient)` pairs.
pub type Terms = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub x: String,
    pub y: String,
    pub terms: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency_class: Option<usize>,
    #[serde(default = "default_weight")]
    pub truncation_weight: u32,
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<Bracket>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, Terms>,
}

fn default_weight() -> u32 {
    DEFAULT_WEIGHT
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationFile {
    pub name: String,
    #[serde(default)]
    pub derivation: BTreeMap<String, Terms>,
}

/// Parse or semantic error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SpecError {
    fn at(src: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Self {
        let offset = span.map_or(0, |s| s.start).min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SpecError { line, column, message: message.into() }
    }
}

type RawTerms = Vec<(Spanned<String>, Spanned<String>)>;

#[derive(Deserialize)]
struct RawGenerator {
    name: Spanned<String>,
    degree: Degree,
}

#[derive(Deserialize)]
struct RawBracket {
    x: Spanned<String>,
    y: Spanned<String>,
    terms: RawTerms,
}

#[derive(Deserialize)]
struct RawSpec {
    name: String,
    nilpotency_class: Option<usize>,
    #[serde(default = "default_weight")]
    truncation_weight: u32,
    generators: Vec<RawGenerator>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
    #[serde(default)]
    differential: BTreeMap<Spanned<String>, RawTerms>,
}

#[derive(Deserialize)]
struct RawDerivation {
    name: String,
    #[serde(default)]
    derivation: BTreeMap<Spanned<String>, RawTerms>,
}

fn syntax(src: &str, e: toml::de::Error) -> SpecError {
    SpecError::at(src, e.span(), e.message().trim().to_string())
}

struct Resolver<'a> {
    src: &'a str,
    basis: &'a GradedBasis,
}

impl Resolver<'_> {
    fn index(&self, name: &Spanned<String>) -> Result<usize, SpecError> {
        self.basis
            .index_of(name.get_ref())
            .map_err(|e| SpecError::at(self.src, Some(name.span()), e.to_string()))
    }

    fn terms(&self, raw: &RawTerms) -> Result<(Vector, Terms), SpecError> {
        let mut v = Vector::new();
        let mut plain = Terms::new();
        for (g, c) in raw {
            let i = self.index(g)?;
            let x = parse_rational(c.get_ref()).map_err(|e| SpecError::at(self.src, Some(c.span()), e.to_string()))?;
            if v.contains_key(&i) {
                return Err(SpecError::at(self.src, Some(g.span()), format!("generator {:?} repeated in one term list", g.get_ref())));
            }
            v.insert(i, x);
            plain.push((g.get_ref().clone(), c.get_ref().clone()));
        }
        v.retain(|_, c| *c != dglg_core::scalar::zero());
        Ok((v, plain))
    }

    fn map(&self, raw: &BTreeMap<Spanned<String>, RawTerms>, degree: Degree) -> Result<(GradedLinearMap, BTreeMap<String, Terms>), SpecError> {
        let mut images = BTreeMap::new();
        let mut plain = BTreeMap::new();
        for (k, t) in raw {
            let i = self.index(k)?;
            let (v, p) = self.terms(t)?;
            images.insert(i, v);
            plain.insert(k.get_ref().clone(), p);
        }
        Ok((GradedLinearMap { degree, images }.normalized(), plain))
    }
}

/// A parsed spec file together with the algebra it describes.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub file: SpecFile,
    pub spec: DglaSpec,
}

pub fn parse_spec(src: &str) -> Result<Parsed, SpecError> {
    let raw: RawSpec = toml::from_str(src).map_err(|e| syntax(src, e))?;
    let gens: Vec<(String, Degree)> = raw.generators.iter().map(|g| (g.name.get_ref().clone(), g.degree)).collect();
    let basis = GradedBasis::new(gens).map_err(|e| {
        let span = match &e {
            dglg_core::grading::BasisError::DuplicateName(n) => {
                raw.generators.iter().filter(|g| g.name.get_ref() == n).nth(1).map(|g| g.name.span())
            }
            _ => None,
        };
        SpecError::at(src, span, e.to_string())
    })?;
    let r = Resolver { src, basis: &basis };
    let mut brackets = Vec::new();
    let mut plain_brackets = Vec::new();
    for b in &raw.brackets {
        let (v, terms) = r.terms(&b.terms)?;
        brackets.push(((r.index(&b.x)?, r.index(&b.y)?), v));
        plain_brackets.push(Bracket { x: b.x.get_ref().clone(), y: b.y.get_ref().clone(), terms });
    }
    let (differential, plain_diff) = r.map(&raw.differential, 1)?;
    let spec = DglaSpec::new(basis.clone(), brackets, differential).map_err(|e| {
        let span = match &e {
            DglaError::EvenSelfBracket(n) | DglaError::DuplicateBracket(n, _) => {
                raw.brackets.iter().rev().find(|b| b.x.get_ref() == n).map(|b| b.x.span())
            }
            _ => None,
        };
        SpecError::at(src, span, e.to_string())
    })?;
    let file = SpecFile {
        name: raw.name,
        nilpotency_class: raw.nilpotency_class,
        truncation_weight: raw.truncation_weight,
        generators: raw.generators.iter().map(|g| Generator { name: g.name.get_ref().clone(), degree: g.degree }).collect(),
        brackets: plain_brackets,
        differential: plain_diff,
    };
    Ok(Parsed { file, spec })
}

/// Parses a derivation file against the basis of `spec`. The map has degree 0.
pub fn parse_derivation(src: &str, spec: &DglaSpec) -> Result<(DerivationFile, GradedLinearMap), SpecError> {
    let raw: RawDerivation = toml::from_str(src).map_err(|e| syntax(src, e))?;
    let r = Resolver { src, basis: spec.basis() };
    let (map, plain) = r.map(&raw.derivation, 0)?;
    Ok((DerivationFile { name: raw.name, derivation: plain }, map))
}

fn render_terms(spec: &DglaSpec, v: &Vector) -> Terms {
    v.iter().map(|(i, c)| (spec.basis().name(*i).to_string(), render(c))).collect()
}

impl SpecFile {
    /// Canonical file for an algebra: brackets for `i < j` (and `i = i` for
    /// odd generators) in basis order, coefficients reduced.
    pub fn from_spec(name: &str, spec: &DglaSpec, nilpotency_class: Option<usize>, truncation_weight: u32) -> Self {
        let b = spec.basis();
        let generators = (0..spec.dim()).map(|i| Generator { name: b.name(i).to_string(), degree: b.degree(i) }).collect();
        let brackets = spec
            .stored_brackets()
            .iter()
            .map(|((i, j), v)| Bracket { x: b.name(*i).to_string(), y: b.name(*j).to_string(), terms: render_terms(spec, v) })
            .collect();
        let differential = spec
            .differential()
            .images
            .iter()
            .map(|(i, v)| (b.name(*i).to_string(), render_terms(spec, v)))
            .collect();
        SpecFile { name: name.to_string(), nilpotency_class, truncation_weight, generators, brackets, differential }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }

    /// The canonical form of the same algebra.
    pub fn canonical(&self, spec: &DglaSpec) -> SpecFile {
        SpecFile::from_spec(&self.name, spec, self.nilpotency_class, self.truncation_weight)
    }
}

impl DerivationFile {
    pub fn from_map(name: &str, spec: &DglaSpec, map: &GradedLinearMap) -> Self {
        let derivation =
            map.images.iter().map(|(i, v)| (spec.basis().name(*i).to_string(), render_terms(spec, v))).collect();
        DerivationFile { name: name.to_string(), derivation }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("derivation files always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AB_EXT: &str = r#"name = "ab-ext"
truncation_weight = 4

[[generators]]
name = "a"
degree = 0

[[generators]]
name = "b"
degree = 1

[differential]
a = [["b", "1"]]
"#;

    #[test]
    fn parses_and_serializes_back() {
        let p = parse_spec(AB_EXT).unwrap();
        assert_eq!(p.spec.dim(), 2);
        assert_eq!(p.file.to_toml(), AB_EXT);
        assert_eq!(p.file.canonical(&p.spec), p.file);
    }

    #[test]
    fn zero_denominator_is_located() {
        let src = AB_EXT.replace("\"1\"]]", "\"1/0\"]]");
        let e = parse_spec(&src).unwrap_err();
        assert_eq!((e.line, e.column), (13, 12));
        assert!(e.message.contains("zero denominator"), "{e}");
    }

    #[test]
    fn unknown_generator_is_located() {
        let src = AB_EXT.replace("[[\"b\"", "[[\"c\"");
        let e = parse_spec(&src).unwrap_err();
        assert_eq!((e.line, e.column), (13, 7));
        assert!(e.message.contains("\"c\""));
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse_spec("name = \"x\"\ngenerators = [\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_spec("name = \"x\"\n").unwrap_err();
        assert!(e.message.contains("generators"), "{e}");
    }

    #[test]
    fn default_weight_and_duplicates() {
        let src = "name = \"x\"\n\n[[generators]]\nname = \"a\"\ndegree = 0\n\n[[generators]]\nname = \"a\"\ndegree = 1\n";
        let e = parse_spec(src).unwrap_err();
        assert_eq!(e.line, 8);
        let p = parse_spec(&src.replace("name = \"a\"\ndegree = 1", "name = \"b\"\ndegree = 1")).unwrap();
        assert_eq!(p.file.truncation_weight, DEFAULT_WEIGHT);
    }
}
