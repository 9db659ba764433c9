mod common;

use common::*;
use homnorden_core::curvature::{self, check_curvature_holomorphic, check_curvature_identities, curvature};
use homnorden_core::geometry::{self, levi_civita};
use homnorden_core::identities::*;
use homnorden_core::tensorcalc::purity_check;

fn kahler_examples() -> Vec<(String, homnorden_core::classify::Instance)> {
    vec![
        ("kahler 1,1".into(), instance(&kahler_norden(), &bind(&[("A", 1), ("B", 1)]))),
        ("kahler 2,3".into(), instance(&kahler_norden(), &bind(&[("A", 2), ("B", 3)]))),
        ("abelian".into(), instance(&abelian_kahler_norden(), &bind(&[("A", 2)]))),
    ]
}

#[test]
fn connection_identities_on_every_example() {
    for (s, b) in all_examples() {
        let inst = instance(&s, &b);
        let (alg, g, j) = (&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap());
        let conn = levi_civita(alg, g).unwrap();
        assert!(check_derivative_symmetry(alg, g, j, &conn).passed, "{}", s.name);
        let t = check_tachibana_decomposition(alg, g, j, &conn);
        assert!(t.passed(), "{}:\n{}", s.name, t);
        let tw = check_twin_decomposition(alg, g, j, &conn);
        assert!(tw.passed(), "{}:\n{}", s.name, tw);
        assert!(check_nijenhuis_antisymmetry(alg, j).passed, "{}", s.name);
        assert!(check_twin_tachibana_equivalence(alg, g, j).passed, "{}", s.name);
    }
}

#[test]
fn kahler_and_holomorphic_agree_on_every_example() {
    for (s, b) in all_examples() {
        let inst = instance(&s, &b);
        let (alg, g, j) = (&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap());
        let kahler = geometry::check_kahler(alg, g, j).unwrap();
        let holo = geometry::check_holomorphic_metric(alg, g, j);
        assert_eq!(kahler.get(geometry::KAHLER).unwrap().passed, holo.passed(), "{}", s.name);
        let anti = kahler.get(geometry::KAHLER_ANTICOMMUTING_FORM).unwrap().passed;
        assert_eq!(anti, kahler.passed(), "{}", s.name);
    }
}

#[test]
fn curvature_identities_on_kahler_examples() {
    for (name, inst) in kahler_examples() {
        let (alg, g, j) = (&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap());
        let conn = levi_civita(alg, g).unwrap();
        let k = curvature(alg, g, &conn);
        let report = check_curvature_identities(alg, Some(j), &conn, &k);
        assert_eq!(report.checks.len(), 6);
        assert!(report.passed(), "{}:\n{}", name, report);
        assert!(check_curvature_holomorphic(alg, j, &k).passed, "{}", name);
    }
}

#[test]
fn j_independent_curvature_identities_hold_everywhere() {
    for (s, b) in all_examples() {
        let inst = instance(&s, &b);
        let (alg, g) = (&inst.algebra, inst.metric.as_ref().unwrap());
        let conn = levi_civita(alg, g).unwrap();
        let k = curvature(alg, g, &conn);
        let report = check_curvature_identities(alg, None, &conn, &k);
        assert!(report.passed(), "{}:\n{}", s.name, report);
        let d = curvature::left_symmetric_defect(alg, &conn);
        assert!(d.commutator.passed);
        assert!(curvature::check_defect_is_minus_curvature(&d, &k).passed, "{}", s.name);
    }
}

#[test]
fn non_holomorphic_curvature_is_not_pure() {
    let inst = instance(&norden_nonholomorphic(), &bind(&[("a", 1), ("A", 1), ("B", 2), ("C", 3), ("D", 4)]));
    let (alg, g, j) = (&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap());
    let conn = levi_civita(alg, g).unwrap();
    let k = curvature(alg, g, &conn);
    assert!(!purity_check(&k.k04, &j.composite(alg)).passed);
    assert!(!check_curvature_holomorphic(alg, j, &k).passed);
    let t = curvature::tachibana_curvature(alg, j, &k);
    assert_eq!(t.purity, homnorden_core::tensorcalc::Purity::Unverified);
}

#[test]
fn kahler_curvature_components() {
    let inst = instance(&kahler_norden(), &bind(&[("A", 1), ("B", 1)]));
    let (alg, g) = (&inst.algebra, inst.metric.as_ref().unwrap());
    let k = curvature(alg, g, &levi_civita(alg, g).unwrap());
    let op = |i: usize, j: usize, z: usize| k.operator(i - 1, j - 1).column(z - 1);
    assert_eq!(op(1, 2, 1), vec_of(4, &[(2, q(-1))]));
    assert_eq!(op(1, 2, 2), vec_of(4, &[(1, q(1))]));
    assert_eq!(op(1, 3, 3), vec_of(4, &[(1, q(-1))]));
    assert_eq!(op(2, 4, 4), vec_of(4, &[(2, q(-1))]));
    assert_eq!(op(3, 4, 1), vec_of(4, &[(2, q(1))]));
    assert_eq!(op(3, 4, 4), vec_of(4, &[(3, q(-1))]));
    assert!(op(1, 4, 1).iter().all(|c| c.is_zero()));
    assert!(op(2, 3, 2).iter().all(|c| c.is_zero()));
    let nonzero = k.k13.nonzero().filter(|(ix, _)| ix[1] < ix[2]).count();
    assert_eq!(nonzero, 16);
}
