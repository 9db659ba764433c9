mod common;

use common::*;
use homnorden_core::classify::{classify, render_report, Classification, Flag, ReportFormat, Status};
use homnorden_core::geometry::{self, nijenhuis};
use homnorden_core::homalg::check_classical_jacobi;
use homnorden_core::tensorcalc::{tachibana, PurityCheck};

fn flags(c: &Classification, expected: &[(Flag, Status)]) {
    for (f, s) in expected {
        assert_eq!(c.status(*f), *s, "{}: flag {}\n{}", c.name, f, render_report(c, ReportFormat::Text));
    }
}

use Flag::*;
use Status::{Fail, Pass};

#[test]
fn norden_nonholomorphic_verdicts() {
    let c = classify(&norden_nonholomorphic(), &[bind(&[("a", 1), ("A", 1), ("B", 2), ("C", 3), ("D", 4)])]).unwrap();
    flags(&c, &[(ValidHomLie, Pass), (MetricOk, Pass), (AlmostComplex, Pass), (Norden, Pass), (Integrable, Pass)]);
    flags(&c, &[(KahlerNorden, Fail), (Holomorphic, Fail), (AbelianJ, Pass)]);
}

#[test]
fn norden_nonholomorphic_classical_jacobi_defect() {
    let s = norden_nonholomorphic();
    for a in [1, 2, 3] {
        let inst = instance(&s, &bind(&[("a", a), ("A", 1), ("B", 2), ("C", 3), ("D", 4)]));
        let check = check_classical_jacobi(&inst.algebra);
        let w = check.witnesses.iter().find(|w| w.indices == vec![2, 3, 4]).unwrap();
        assert_eq!(w.defect, vec_of(4, &[(2, q(-a * a))]));
    }
}

/// The Tachibana operator of the metric is linear in the metric entries.
#[test]
fn norden_nonholomorphic_tachibana_spot_values() {
    let s = norden_nonholomorphic();
    let inst = instance(&s, &bind(&[("a", 1), ("A", 1), ("B", 2), ("C", 3), ("D", 4)]));
    let g = inst.metric.unwrap();
    let t = tachibana(&inst.algebra, inst.j.as_ref().unwrap(), &g.tensor(), PurityCheck::Require).unwrap().tensor;
    let row: Vec<_> = (0..4).map(|k| t.get(&[0, 0, k]).clone()).collect();
    assert_eq!(row, vec![q(2), q(2), q(3), q(8)]);
}

#[test]
fn almost_norden_nonintegrable_verdicts() {
    let s = almost_norden_nonintegrable();
    let c = classify(&s, &[bind(&[("a", 1)])]).unwrap();
    flags(&c, &[(ValidHomLie, Pass), (AlmostComplex, Pass), (Norden, Pass), (Integrable, Fail)]);
    flags(&c, &[(KahlerNorden, Fail), (Holomorphic, Fail), (AbelianJ, Fail)]);
    let inst = instance(&s, &bind(&[("a", 1)]));
    let n = nijenhuis(&inst.algebra, inst.j.as_ref().unwrap());
    let n12: Vec<_> = (0..4).map(|k| n.get(&[k, 0, 1]).clone()).collect();
    assert_eq!(n12, vec_of(4, &[(3, q(-1)), (4, q(1))]));
    let check = geometry::check_integrable(&inst.algebra, inst.j.as_ref().unwrap());
    let pairs: Vec<_> = check.witnesses.iter().map(|w| w.indices.clone()).collect();
    assert_eq!(pairs, vec![vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]);
}

#[test]
fn kahler_norden_verdicts_at_two_bindings() {
    let c = classify(&kahler_norden(), &[bind(&[("A", 1), ("B", 1)]), bind(&[("A", 2), ("B", 3)])]).unwrap();
    flags(&c, &[(ValidHomLie, Pass), (Norden, Pass), (KahlerNorden, Pass), (Holomorphic, Pass), (Integrable, Pass)]);
    flags(&c, &[(AbelianJ, Fail), (Flat, Fail), (HomLeftSymmetric, Fail)]);
    let w = c.flag(AbelianJ).witness.as_ref().unwrap();
    assert_eq!(w.witness.indices, vec![1, 2]);
}

#[test]
fn abelian_kahler_norden_verdicts() {
    let c = classify(&abelian_kahler_norden(), &[bind(&[("A", 2)])]).unwrap();
    for f in Flag::ALL {
        assert_eq!(c.status(f), Pass, "{}", f);
    }
}

#[test]
fn default_grid_agrees_with_chosen_bindings() {
    for s in [norden_nonholomorphic(), almost_norden_nonintegrable(), kahler_norden(), abelian_kahler_norden()] {
        let grid = s.default_grid();
        assert_eq!(grid.len(), 5, "{}", s.name);
        let c = classify(&s, &[]).unwrap();
        assert!(c.notes.iter().all(|n| !n.contains("varies")), "{}: {:?}", s.name, c.notes);
    }
}

#[test]
fn degenerate_binding_is_an_error() {
    let err = classify(&kahler_norden(), &[bind(&[("A", 0), ("B", 1)])]).unwrap_err();
    assert!(err.to_string().contains("degenerate"), "{}", err);
}

#[test]
fn missing_metric_leaves_dependent_flags_unevaluated() {
    let mut s = kahler_norden();
    s.metric = None;
    let c = classify(&s, &[bind(&[("A", 1), ("B", 1)])]).unwrap();
    for f in [MetricOk, Norden, KahlerNorden, Holomorphic, Flat, HomLeftSymmetric] {
        assert_eq!(c.status(f), Status::NotEvaluated, "{}", f);
    }
    assert_eq!(c.status(AlmostComplex), Pass);
}

#[test]
fn reports_list_every_flag_and_round_trip() {
    let c = classify(&abelian_kahler_norden(), &[bind(&[("A", 2)])]).unwrap();
    let text = render_report(&c, ReportFormat::Text);
    for f in Flag::ALL {
        assert!(text.contains(&format!("{}=pass", f)), "{}", text);
    }
    let json = render_report(&c, ReportFormat::Json);
    assert_eq!(Classification::from_json(&json).unwrap(), c);
    assert_eq!(render_report(&Classification::from_json(&json).unwrap(), ReportFormat::Json), json);
}

#[test]
fn failing_flag_reports_witness_in_both_formats() {
    let c = classify(&kahler_norden(), &[bind(&[("A", 1), ("B", 1)])]).unwrap();
    let text = render_report(&c, ReportFormat::Text);
    assert!(text.contains("abelian_J=fail"));
    assert!(text.contains("abelian complex structure at {A=1, B=1}: (e1,e2)"), "{}", text);
    let json = render_report(&c, ReportFormat::Json);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let abelian = parsed["flags"].as_array().unwrap().iter().find(|f| f["flag"] == "abelian_J").unwrap();
    assert_eq!(abelian["witness"]["witness"]["indices"], serde_json::json!([1, 2]));
}
