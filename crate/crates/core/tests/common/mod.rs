#![allow(dead_code)]

use std::collections::BTreeMap;

use homnorden_core::classify::{BracketExpr, Instance, ParametricStructure};
use homnorden_core::exactnum::{parse_expr, Bindings, ParamExpr, Rational};
use homnorden_core::linalg::{self, Vector};

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

pub fn bind(pairs: &[(&str, i64)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), q(*v))).collect()
}

/// `Σ c·e_k` with 1-based `k`.
pub fn vec_of(n: usize, terms: &[(usize, Rational)]) -> Vector {
    let mut v = linalg::zero_vector(n);
    for (k, c) in terms {
        v[k - 1] = c.clone();
    }
    v
}

fn mat(rows: &[&[&str]]) -> Vec<Vec<ParamExpr>> {
    rows.iter().map(|r| r.iter().map(|s| parse_expr(s).unwrap()).collect()).collect()
}

/// Matrix from the images of the basis vectors (1-based `(from, to, coeff)`).
fn images(n: usize, map: &[(usize, usize, &str)]) -> Vec<Vec<ParamExpr>> {
    let mut rows = vec![vec![ParamExpr::lit(0); n]; n];
    for (from, to, c) in map {
        rows[to - 1][from - 1] = parse_expr(c).unwrap();
    }
    rows
}

type BracketList<'a> = [(usize, usize, &'a [(usize, &'a str)])];

fn brackets(list: &BracketList) -> Vec<BracketExpr> {
    list.iter()
        .map(|(i, j, cs)| BracketExpr {
            i: i - 1,
            j: j - 1,
            coefficients: cs.iter().map(|(k, c)| (k - 1, parse_expr(c).unwrap())).collect(),
        })
        .collect()
}

fn params(list: &[(&str, &str)]) -> BTreeMap<String, ParamExpr> {
    list.iter().map(|(k, v)| (k.to_string(), parse_expr(v).unwrap())).collect()
}

/// Four-dimensional Norden algebra that is not holomorphic; parameters
/// `a` (bracket scale) and `A, B, C, D` (metric).
pub fn norden_nonholomorphic() -> ParametricStructure {
    ParametricStructure {
        name: "norden_nonholomorphic_4d".into(),
        dimension: 4,
        parameters: params(&[("A", "1"), ("B", "2"), ("C", "3"), ("D", "4"), ("a", "1")]),
        brackets: brackets(&[(1, 4, &[(2, "a")]), (2, 3, &[(1, "a")])]),
        phi: images(4, &[(1, 2, "-1"), (2, 1, "-1"), (3, 4, "1"), (4, 3, "1")]),
        metric: Some(mat(&[
            &["A", "B", "C", "D"],
            &["B", "A", "-D", "-C"],
            &["C", "-D", "-A", "B"],
            &["D", "-C", "B", "-A"],
        ])),
        j: Some(images(4, &[(1, 3, "-1"), (2, 4, "1"), (3, 1, "1"), (4, 2, "-1")])),
    }
}

/// Four-dimensional almost Norden algebra with non-vanishing Nijenhuis tensor.
pub fn almost_norden_nonintegrable() -> ParametricStructure {
    ParametricStructure {
        name: "almost_norden_nonintegrable_4d".into(),
        dimension: 4,
        parameters: params(&[("a", "1")]),
        brackets: brackets(&[
            (1, 4, &[(1, "a"), (2, "a")]),
            (2, 3, &[(1, "a"), (2, "a")]),
            (3, 4, &[(3, "-a"), (4, "a")]),
        ]),
        phi: images(4, &[(1, 2, "1"), (2, 1, "1"), (3, 4, "1"), (4, 3, "1")]),
        metric: Some(mat(&[&["-1", "0", "0", "0"], &["0", "-1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]])),
        j: Some(images(4, &[(1, 4, "1"), (2, 3, "1"), (3, 2, "-1"), (4, 1, "-1")])),
    }
}

/// Four-dimensional Kähler-Norden algebra with non-abelian `J`; metric
/// `diag(A, B, -B, -A)`.
pub fn kahler_norden() -> ParametricStructure {
    ParametricStructure {
        name: "kahler_norden_4d".into(),
        dimension: 4,
        parameters: params(&[("A", "1"), ("B", "1")]),
        brackets: brackets(&[
            (1, 2, &[(3, "-1")]),
            (1, 3, &[(2, "1")]),
            (2, 4, &[(2, "1")]),
            (3, 4, &[(3, "1")]),
        ]),
        phi: images(4, &[(1, 1, "1"), (2, 2, "-1"), (3, 3, "-1"), (4, 4, "1")]),
        metric: Some(mat(&[&["A", "0", "0", "0"], &["0", "B", "0", "0"], &["0", "0", "-B", "0"], &["0", "0", "0", "-A"]])),
        j: Some(images(4, &[(1, 4, "-1"), (2, 3, "-1"), (3, 2, "1"), (4, 1, "1")])),
    }
}

/// Six-dimensional Kähler-Norden algebra with abelian `J`.
pub fn abelian_kahler_norden() -> ParametricStructure {
    ParametricStructure {
        name: "abelian_kahler_norden_6d".into(),
        dimension: 6,
        parameters: params(&[("A", "2")]),
        brackets: brackets(&[
            (3, 5, &[(2, "-1")]),
            (3, 6, &[(1, "1")]),
            (4, 5, &[(1, "1")]),
            (4, 6, &[(2, "1")]),
            (5, 6, &[(3, "1")]),
        ]),
        phi: images(6, &[(1, 1, "-1"), (2, 2, "-1"), (3, 3, "1"), (4, 4, "1"), (5, 5, "-1"), (6, 6, "-1")]),
        metric: Some(mat(&[
            &["0", "0", "0", "0", "A/2", "0"],
            &["0", "0", "0", "0", "0", "A/2"],
            &["0", "0", "A", "0", "0", "0"],
            &["0", "0", "0", "-A", "0", "0"],
            &["A/2", "0", "0", "0", "0", "0"],
            &["0", "A/2", "0", "0", "0", "0"],
        ])),
        j: Some(images(6, &[(1, 2, "-1"), (2, 1, "1"), (3, 4, "1"), (4, 3, "-1"), (5, 6, "1"), (6, 5, "-1")])),
    }
}

pub fn instance(s: &ParametricStructure, b: &Bindings) -> Instance {
    s.instantiate(b).unwrap()
}

pub fn all_examples() -> Vec<(ParametricStructure, Bindings)> {
    vec![
        (norden_nonholomorphic(), bind(&[("a", 1), ("A", 1), ("B", 2), ("C", 3), ("D", 4)])),
        (almost_norden_nonintegrable(), bind(&[("a", 1)])),
        (kahler_norden(), bind(&[("A", 1), ("B", 1)])),
        (kahler_norden(), bind(&[("A", 2), ("B", 3)])),
        (abelian_kahler_norden(), bind(&[("A", 2)])),
    ]
}
