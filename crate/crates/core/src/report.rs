//! Pass/fail check reports with concrete counterexamples.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;

/// A concrete counterexample: the basis labels involved (1-based) and the
/// nonzero defect value found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub defect: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    /// Witness from 0-based basis indices.
    pub fn at(indices: &[usize], defect: Vec<Rational>) -> Self {
        Witness { indices: indices.iter().map(|i| i + 1).collect(), defect, note: None }
    }

    pub fn scalar(indices: &[usize], defect: Rational) -> Self {
        Self::at(indices, alloc::vec![defect])
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn note_only(note: impl Into<String>) -> Self {
        Witness { indices: Vec::new(), defect: Vec::new(), note: Some(note.into()) }
    }
}

/// Formats coordinates as a combination of basis vectors, e.g. `e1 - 3/2·e4`.
pub fn format_vector(v: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('·');
        }
        out.push_str(&alloc::format!("e{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.indices.is_empty() {
            f.write_str("(")?;
            for (n, i) in self.indices.iter().enumerate() {
                if n > 0 {
                    f.write_str(",")?;
                }
                write!(f, "e{}", i)?;
            }
            f.write_str(")")?;
        }
        if !self.defect.is_empty() {
            if !self.indices.is_empty() {
                f.write_str(" ")?;
            }
            match self.defect.len() {
                1 => write!(f, "defect {}", self.defect[0])?,
                _ => write!(f, "defect {}", format_vector(&self.defect))?,
            }
        }
        if let Some(note) = &self.note {
            if !self.indices.is_empty() || !self.defect.is_empty() {
                f.write_str(": ")?;
            }
            f.write_str(note)?;
        }
        Ok(())
    }
}

/// One named identity or condition, with every failing instance found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    /// Informational checks are reported but never make a report fail.
    #[serde(default, skip_serializing_if = "core::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witnesses: Vec::new(), informational: false }
    }

    /// A failing check; panics if no witness is supplied.
    pub fn fail(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        assert!(!witnesses.is_empty(), "a failing check needs a witness");
        Check { name: name.into(), passed: false, witnesses, informational: false }
    }

    /// Passes iff `witnesses` is empty.
    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        if witnesses.is_empty() {
            Self::pass(name)
        } else {
            Self::fail(name, witnesses)
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "fail" };
        write!(f, "{}: {}", self.name, verdict)?;
        if self.informational {
            f.write_str(" (informational)")?;
        }
        for w in &self.witnesses {
            write!(f, "\n    {}", w)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    /// True when every non-informational check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl From<Check> for ValidationReport {
    fn from(check: Check) -> Self {
        ValidationReport { checks: alloc::vec![check] }
    }
}

pub(crate) fn fail_note(name: &str, note: &str) -> Check {
    Check::fail(name, alloc::vec![Witness::note_only(note.to_string())])
}
