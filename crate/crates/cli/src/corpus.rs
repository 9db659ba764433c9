//! Worked examples shipped with the tool, each with frozen expectations.
//!
//! Every expected value carries an `origin`: `reference` for values taken
//! from published worked examples, `computed` for values frozen from an
//! independent computation, `trivial` for values that hold by inspection.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use homnorden_core::classify::{classify, format_bindings, Flag, Instance, ParametricStructure, Status};
use homnorden_core::exactnum::Bindings;
use homnorden_core::report::{format_vector, ValidationReport};
use homnorden_core::Rational;
use serde::{Deserialize, Serialize};

use crate::document::{self, LoadError};
use crate::render;

pub const FILES: [(&str, &str); 5] = [
    ("norden_nonholomorphic_4d", include_str!("../corpus/norden_nonholomorphic_4d.json")),
    ("almost_norden_nonintegrable_4d", include_str!("../corpus/almost_norden_nonintegrable_4d.json")),
    ("kahler_norden_4d", include_str!("../corpus/kahler_norden_4d.json")),
    ("abelian_kahler_norden_6d", include_str!("../corpus/abelian_kahler_norden_6d.json")),
    ("abelian_4d", include_str!("../corpus/abelian_4d.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Reference,
    Computed,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFlag {
    pub status: Status,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub origin: Origin,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedWitness {
    pub check: String,
    pub indices: Vec<usize>,
    pub defect: String,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub binding: BTreeMap<String, String>,
    pub flags: BTreeMap<Flag, ExpectedFlag>,
    #[serde(default)]
    pub connection: Option<Snapshot>,
    #[serde(default)]
    pub curvature: Option<Snapshot>,
    #[serde(default)]
    pub witnesses: Vec<ExpectedWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub structure: ParametricStructure,
    pub expect: Expectations,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus entry {name}: {source}")]
    Load { name: String, source: LoadError },
    #[error("corpus entry {name}: bad expectations: {message}")]
    Expect { name: String, message: String },
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw JSON of the entry called `name` (with or without `.json`).
pub fn source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

fn parse_entry(name: &'static str, text: &str) -> Result<Entry, CorpusError> {
    let structure = document::parse(text).map_err(|source| CorpusError::Load { name: name.into(), source })?;
    let value: serde_json::Value = serde_json::from_str(text).expect("parsed above");
    let expect_err = |message: String| CorpusError::Expect { name: name.into(), message };
    let raw = value.get("expect").cloned().ok_or_else(|| expect_err("missing `expect`".into()))?;
    let expect: Expectations = serde_json::from_value(raw).map_err(|e| expect_err(e.to_string()))?;
    Ok(Entry { name, structure, expect })
}

pub fn entries() -> Result<Vec<Entry>, CorpusError> {
    FILES.iter().map(|(name, text)| parse_entry(name, text)).collect()
}

pub fn entry(name: &str) -> Option<Result<Entry, CorpusError>> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FILES.iter().find(|(n, _)| *n == name).map(|(n, text)| parse_entry(n, text))
}

/// One expectation that did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub binding: String,
    pub item: String,
    pub origin: Origin,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub cases: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Error that stopped evaluation, if any.
    pub error: Option<String>,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

fn binding_of(case: &Case) -> Result<Bindings, String> {
    case.binding
        .iter()
        .map(|(k, v)| v.parse::<Rational>().map(|r| (k.clone(), r)).map_err(|e| format!("binding {}: {}", k, e)))
        .collect()
}

/// Every check reported for an instance, for witness lookup.
pub fn full_report(instance: &Instance) -> ValidationReport {
    let alg = &instance.algebra;
    let mut report = alg.validate();
    if let Some(g) = &instance.metric {
        report.extend(homnorden_core::geometry::check_metric(alg, g));
    }
    if let Some(j) = &instance.j {
        report.extend(homnorden_core::geometry::check_complex(alg, j));
        report.push(homnorden_core::geometry::check_integrable(alg, j));
        report.push(homnorden_core::geometry::check_abelian(alg, j));
        if let Some(g) = &instance.metric {
            report.extend(homnorden_core::geometry::check_norden(alg, g, j));
        }
    }
    report
}

fn compare_lines(
    out: &mut EntryOutcome,
    binding: &str,
    what: &str,
    snapshot: &Snapshot,
    actual: Result<Vec<String>, String>,
) {
    out.checked += 1;
    let actual = match actual {
        Ok(lines) => lines,
        Err(e) => {
            out.mismatches.push(Mismatch {
                binding: binding.into(),
                item: what.into(),
                origin: snapshot.origin,
                expected: format!("{} lines", snapshot.lines.len()),
                actual: e,
            });
            return;
        }
    };
    if actual != snapshot.lines {
        let first = (0..snapshot.lines.len().max(actual.len()))
            .find(|&i| snapshot.lines.get(i) != actual.get(i))
            .expect("lists differ");
        let show = |l: Option<&String>| l.cloned().unwrap_or_else(|| "<none>".into());
        out.mismatches.push(Mismatch {
            binding: binding.into(),
            item: format!("{} line {}", what, first + 1),
            origin: snapshot.origin,
            expected: show(snapshot.lines.get(first)),
            actual: show(actual.get(first)),
        });
    }
}

fn run_case(entry: &Entry, case: &Case, out: &mut EntryOutcome) -> Result<(), String> {
    let binding = binding_of(case)?;
    let label = format_bindings(&binding);
    let c = classify(&entry.structure, std::slice::from_ref(&binding)).map_err(|e| e.to_string())?;
    for (flag, expected) in &case.flags {
        out.checked += 1;
        let actual = c.status(*flag);
        if actual != expected.status {
            out.mismatches.push(Mismatch {
                binding: label.clone(),
                item: format!("flag {}", flag),
                origin: expected.origin,
                expected: expected.status.name().into(),
                actual: actual.name().into(),
            });
        }
    }
    let instance = entry.structure.instantiate(&binding).map_err(|e| e.to_string())?;
    if let Some(s) = &case.connection {
        compare_lines(out, &label, "connection", s, render::connection_lines(&instance).map_err(|e| e.to_string()));
    }
    if let Some(s) = &case.curvature {
        compare_lines(out, &label, "curvature", s, render::curvature_lines(&instance).map_err(|e| e.to_string()));
    }
    if !case.witnesses.is_empty() {
        let report = full_report(&instance);
        for w in &case.witnesses {
            out.checked += 1;
            let found = report
                .get(&w.check)
                .and_then(|check| check.witnesses.iter().find(|x| x.indices == w.indices))
                .map(|x| format_vector(&x.defect));
            if found.as_deref() != Some(w.defect.as_str()) {
                out.mismatches.push(Mismatch {
                    binding: label.clone(),
                    item: format!("{} witness {:?}", w.check, w.indices),
                    origin: w.origin,
                    expected: w.defect.clone(),
                    actual: found.unwrap_or_else(|| "no witness".into()),
                });
            }
        }
    }
    Ok(())
}

pub fn run_entry(entry: &Entry) -> EntryOutcome {
    let start = Instant::now();
    let mut out = EntryOutcome {
        name: entry.name.into(),
        cases: entry.expect.cases.len(),
        checked: 0,
        mismatches: Vec::new(),
        error: None,
        elapsed: Duration::ZERO,
    };
    for case in &entry.expect.cases {
        if let Err(e) = run_case(entry, case, &mut out) {
            out.error = Some(e);
            break;
        }
    }
    out.elapsed = start.elapsed();
    out
}

pub fn run_all() -> Result<Vec<EntryOutcome>, CorpusError> {
    Ok(entries()?.iter().map(run_entry).collect())
}
