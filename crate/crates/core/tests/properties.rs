mod common;

use common::*;
use homnorden_core::classify::{classify, Classification};
use homnorden_core::exactnum::{eval_expr, parse_expr, Bindings, Rational};
use homnorden_core::geometry::twin_metric;
use homnorden_core::homalg::HomLieAlgebra;
use homnorden_core::linalg::{self, Matrix};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..60).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn small_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-9i64..10).prop_map(q), n)
}

/// Random antisymmetric structure constants in dimension `n`.
fn algebra() -> impl Strategy<Value = HomLieAlgebra> {
    (2usize..5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(small_vec(n), pairs).prop_map(move |coeffs| {
            let mut brackets = Vec::new();
            let mut it = coeffs.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    brackets.push((i, j, it.next().unwrap()));
                }
            }
            HomLieAlgebra::new(n, brackets, Matrix::identity(n)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational(), d in nonzero_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &d) / &d, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&d * &d.recip().unwrap(), Rational::one());
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        prop_assert!(num_is_canonical(&a));
    }

    #[test]
    fn expression_evaluation_matches_direct_arithmetic(a in rational(), b in nonzero_rational(), c in rational()) {
        let mut env = Bindings::new();
        env.insert("a".into(), a.clone());
        env.insert("b".into(), b.clone());
        env.insert("c".into(), c.clone());
        let e = parse_expr("(a - c) / b + a * -c").unwrap();
        let direct = &(&(&a - &c) / &b) + &(&a * &-&c);
        prop_assert_eq!(eval_expr(&e, &env).unwrap(), direct.clone());
        let substituted = e.substitute(&env);
        prop_assert!(substituted.parameters().is_empty());
        prop_assert_eq!(eval_expr(&substituted, &Bindings::new()).unwrap(), direct);
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        (alg, x, y, z) in algebra().prop_flat_map(|alg| {
            let n = alg.dim();
            (Just(alg), small_vec(n), small_vec(n), small_vec(n))
        }),
        s in -5i64..6,
        t in -5i64..6,
    ) {
        let (s, t) = (q(s), q(t));
        let xy = alg.bracket(&x, &y);
        prop_assert_eq!(linalg::neg(&xy), alg.bracket(&y, &x));
        prop_assert!(linalg::is_zero_vector(&alg.bracket(&x, &x)));
        let combo = linalg::add(&linalg::scale(&s, &x), &linalg::scale(&t, &y));
        let lhs = alg.bracket(&combo, &z);
        let rhs = linalg::add(&linalg::scale(&s, &alg.bracket(&x, &z)), &linalg::scale(&t, &alg.bracket(&y, &z)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twin_of_twin_is_negative_metric(
        which in 0usize..2,
        a in nonzero_rational(), b in nonzero_rational(), c in rational(), d in rational(), k in nonzero_rational(),
    ) {
        let (s, binding) = if which == 0 {
            (kahler_norden(), Bindings::from([("A".into(), a), ("B".into(), b)]))
        } else {
            (norden_nonholomorphic(), Bindings::from([
                ("A".into(), a), ("B".into(), b), ("C".into(), c), ("D".into(), d), ("a".into(), k),
            ]))
        };
        let inst = s.instantiate(&binding).unwrap();
        let g = inst.metric.unwrap();
        prop_assume!(!g.matrix().determinant().is_zero());
        let j = inst.j.unwrap();
        let twin = twin_metric(&inst.algebra, &g, &j).unwrap();
        let back = twin_metric(&inst.algebra, &twin, &j).unwrap();
        prop_assert_eq!(back.matrix(), &g.matrix().neg());
    }

    #[test]
    fn structured_reports_are_deterministic(a in 1i64..40, b in 1i64..40) {
        let binding = bind(&[("A", a), ("B", b)]);
        let first = classify(&kahler_norden(), std::slice::from_ref(&binding)).unwrap();
        let second = classify(&kahler_norden(), &[binding]).unwrap();
        let json = first.to_json();
        prop_assert_eq!(&json, &second.to_json());
        let parsed = Classification::from_json(&json).unwrap();
        prop_assert_eq!(&parsed, &first);
        prop_assert_eq!(parsed.to_json(), json);
    }
}

fn num_is_canonical(r: &Rational) -> bool {
    use num_integer::Integer;
    r.denom() > &0.into() && r.numer().gcd(r.denom()) == 1.into()
}
