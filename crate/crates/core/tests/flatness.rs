mod common;

use common::*;
use homnorden_core::classify::{Instance, ParametricStructure};
use homnorden_core::curvature::{associator, check_flat_theorem, FlatTheorem};
use homnorden_core::geometry::{abelian_kahler_checks, check_abelian, levi_civita, ComplexStructure, Metric};
use homnorden_core::homalg::HomLieAlgebra;
use homnorden_core::identities::check_twisted_derivatives_commute;
use homnorden_core::linalg::Matrix;

fn abelian_example() -> Instance {
    instance(&abelian_kahler_norden(), &bind(&[("A", 2)]))
}

#[test]
fn abelian_chain() {
    let inst = abelian_example();
    let (alg, g, j) = (&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap());
    assert!(check_abelian(alg, j).passed);
    let conn = levi_civita(alg, g).unwrap();
    let report = abelian_kahler_checks(alg, j, &conn);
    assert!(report.passed(), "{}", report);
    assert!(check_twisted_derivatives_commute(alg, &conn).passed);
    match check_flat_theorem(alg, g, j) {
        FlatTheorem::Checked(r) => {
            assert_eq!(r.checks.len(), 4);
            assert!(r.passed(), "{}", r);
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn explicit_connection_formula_spot_value() {
    let inst = abelian_example();
    let (alg, j) = (&inst.algebra, inst.j.as_ref().unwrap());
    let a = j.composite(alg);
    let e5 = vec_of(6, &[(5, q(1))]);
    let rhs: Vec<_> = {
        let first = alg.bracket(&e5, &e5);
        let second = a.mul_vec(&alg.bracket(&e5, &a.mul_vec(&e5)));
        first.iter().zip(second).map(|(x, y)| x - &y).collect()
    };
    assert_eq!(rhs, vec_of(6, &[(4, q(1))]));
}

#[test]
fn associator_spot_values() {
    let inst = abelian_example();
    let (alg, g) = (&inst.algebra, inst.metric.as_ref().unwrap());
    let conn = levi_civita(alg, g).unwrap();
    let ass = |u: usize, v: usize, w: usize| associator(alg, &conn, u - 1, v - 1).column(w - 1);
    let half = r(1, 2);
    let cases = [
        ((5, 5, 5), (5, 5, 5), 1, -&half),
        ((5, 5, 6), (5, 5, 6), 2, half.clone()),
        ((5, 6, 5), (6, 5, 5), 2, -&half),
        ((5, 6, 6), (6, 5, 6), 1, -&half),
        ((6, 6, 5), (6, 6, 5), 1, half.clone()),
        ((6, 6, 6), (6, 6, 6), 2, -&half),
    ];
    for ((u, v, w), (u2, v2, w2), k, c) in cases {
        let expected = vec_of(6, &[(k, c)]);
        assert_eq!(ass(u, v, w), expected, "ass{:?}", (u, v, w));
        assert_eq!(ass(u2, v2, w2), expected, "ass{:?}", (u2, v2, w2));
    }
    for u in 1..=6 {
        for v in 1..=6 {
            for w in 1..=6 {
                if u < 5 || v < 5 {
                    assert!(ass(u, v, w).iter().all(|c| c.is_zero()), "ass{:?}", (u, v, w));
                }
            }
        }
    }
}

#[test]
fn theorem_not_applicable_for_non_abelian_j() {
    let inst = instance(&kahler_norden(), &bind(&[("A", 1), ("B", 1)]));
    match check_flat_theorem(&inst.algebra, inst.metric.as_ref().unwrap(), inst.j.as_ref().unwrap()) {
        FlatTheorem::NotApplicable { reason } => assert!(reason.contains("not abelian")),
        other => panic!("{:?}", other),
    }
}

#[test]
fn abelian_bracket_is_trivially_flat() {
    let phi = Matrix::identity(2);
    let alg = HomLieAlgebra::new(2, Vec::new(), phi).unwrap();
    let g = Metric::new(Matrix::from_i64_rows(&[&[1, 0], &[0, -1]])).unwrap();
    let j = ComplexStructure::new(Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
    match check_flat_theorem(&alg, &g, &j) {
        FlatTheorem::Checked(r) => assert!(r.passed()),
        other => panic!("{:?}", other),
    }
    let inst = Instance { algebra: alg, metric: Some(g), j: Some(j) };
    let s = ParametricStructure::from_instance("flat plane", &inst);
    assert!(!s.is_parametric());
}
