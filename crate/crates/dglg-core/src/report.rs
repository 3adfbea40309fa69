//! Line-oriented verification reports: `key: PASS` or `key: FAIL [witness: ...]`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub key: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pass, &self.witness) {
            (true, _) => write!(f, "{}: PASS", self.key),
            (false, Some(w)) => write!(f, "{}: FAIL [witness: {}]", self.key, w),
            (false, None) => write!(f, "{}: FAIL", self.key),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, key: &str) {
        self.lines.push(ReportLine { key: key.into(), pass: true, witness: None });
    }

    pub fn fail(&mut self, key: &str, witness: impl Into<String>) {
        self.lines.push(ReportLine { key: key.into(), pass: false, witness: Some(witness.into()) });
    }

    /// `Ok` records a pass, `Err(w)` a failure with witness `w`.
    pub fn record(&mut self, key: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(key),
            Err(w) => self.fail(key, w),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut l in other.lines {
            l.key = alloc::format!("{prefix}.{}", l.key);
            self.lines.push(l);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn get(&self, key: &str) -> Option<&ReportLine> {
        self.lines.iter().find(|l| l.key == key)
    }

    pub fn passed(&self, key: &str) -> bool {
        self.get(key).is_some_and(|l| l.pass)
    }

    pub fn first_failure(&self) -> Option<&ReportLine> {
        self.lines.iter().find(|l| !l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
