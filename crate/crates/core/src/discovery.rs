//! Exhaustive search for complex structures among signed permutations and
//! for diagonal Norden metrics.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::Rational;
use crate::geometry::{self, ComplexStructure, GeometryError, Metric};
use crate::homalg::HomLieAlgebra;
use crate::linalg::Matrix;
use crate::report::ValidationReport;

/// Largest dimension accepted by the searches (`2^8 · 8!` candidates).
pub const MAX_DIMENSION: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Predicate {
    Norden,
    /// Kähler-Norden; implies `Norden`.
    Kahler,
    /// Holomorphic Norden; implies `Norden`.
    Holomorphic,
    Abelian,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("dimension {0} exceeds the search limit {MAX_DIMENSION}")]
    DimensionGuard(usize),
    #[error("metric is not valid:\n{0}")]
    InvalidMetric(ValidationReport),
    #[error("complex structure is not valid:\n{0}")]
    InvalidComplexStructure(ValidationReport),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    /// Number of candidates enumerated.
    pub examined: u64,
    pub found: Vec<T>,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `2^n · n!` signed permutation matrices, permutations in lexicographic
/// order and, within each, sign masks in increasing order. The candidate
/// for permutation `π` and mask `m` sends `e_j` to `±e_{π(j)}`, negative
/// when bit `j` of `m` is set.
pub fn signed_permutations(n: usize) -> impl Iterator<Item = Matrix> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut mask: u32 = 0;
    let mut done = false;
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut m = Matrix::zeros(n, n);
        for (j, &pj) in perm.iter().enumerate() {
            let s = if mask >> j & 1 == 1 { -Rational::one() } else { Rational::one() };
            m.set(pj, j, s);
        }
        mask += 1;
        if mask == 1 << n {
            mask = 0;
            done = !next_permutation(&mut perm);
        }
        Some(m)
    })
}

fn guard(n: usize) -> Result<(), SearchError> {
    if n > MAX_DIMENSION {
        Err(SearchError::DimensionGuard(n))
    } else {
        Ok(())
    }
}

/// Signed-permutation `J` passing the almost complex test and every
/// predicate in `predicates`, in enumeration order.
pub fn search_j(
    alg: &HomLieAlgebra,
    g: &Metric,
    predicates: &[Predicate],
) -> Result<SearchOutcome<ComplexStructure>, SearchError> {
    let n = alg.dim();
    guard(n)?;
    let metric = geometry::check_metric(alg, g);
    if !metric.passed() {
        return Err(SearchError::InvalidMetric(metric));
    }
    let wants = |p: Predicate| predicates.contains(&p);
    let need_norden = wants(Predicate::Norden) || wants(Predicate::Kahler) || wants(Predicate::Holomorphic);
    let conn = if wants(Predicate::Kahler) { Some(geometry::levi_civita(alg, g)?) } else { None };

    let mut examined = 0u64;
    let mut found = Vec::new();
    for m in signed_permutations(n) {
        examined += 1;
        let j = ComplexStructure::new(m)?;
        if !geometry::check_complex(alg, &j).passed() {
            continue;
        }
        if need_norden && !geometry::check_norden(alg, g, &j).get(geometry::NORDEN).expect("norden check").passed {
            continue;
        }
        if wants(Predicate::Abelian) && !geometry::check_abelian(alg, &j).passed {
            continue;
        }
        if let Some(conn) = &conn {
            let k = geometry::kahler_checks(conn, &j.composite(alg));
            if !k.get(geometry::KAHLER).expect("kahler check").passed {
                continue;
            }
        }
        if wants(Predicate::Holomorphic) && !geometry::check_holomorphic_metric(alg, g, &j).passed() {
            continue;
        }
        found.push(j);
    }
    Ok(SearchOutcome { examined, found })
}

/// Diagonal metrics with entries from `entries` forming a Norden structure
/// with `J`, in lexicographic order of entry positions.
pub fn search_metric(
    alg: &HomLieAlgebra,
    j: &ComplexStructure,
    entries: &[Rational],
) -> Result<SearchOutcome<Metric>, SearchError> {
    let n = alg.dim();
    guard(n)?;
    let complex = geometry::check_complex(alg, j);
    if !complex.passed() {
        return Err(SearchError::InvalidComplexStructure(complex));
    }
    let mut examined = 0u64;
    let mut found = Vec::new();
    if entries.is_empty() {
        return Ok(SearchOutcome { examined, found });
    }
    let mut choice = vec![0usize; n];
    loop {
        examined += 1;
        let diag: Vec<Rational> = choice.iter().map(|&c| entries[c].clone()).collect();
        let g = Metric::new(Matrix::diagonal(&diag))?;
        if geometry::check_metric(alg, &g).passed() && geometry::check_norden(alg, &g, j).passed() {
            found.push(g);
        }
        let mut slot = n;
        loop {
            if slot == 0 {
                return Ok(SearchOutcome { examined, found });
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < entries.len() {
                break;
            }
            choice[slot] = 0;
        }
    }
}
