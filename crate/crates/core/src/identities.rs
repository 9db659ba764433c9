//! Derived identities relating the connection, the Tachibana operator, the
//! twin metric and the Nijenhuis tensor. Each function evaluates both sides
//! independently on all basis tuples and reports any mismatch.

use alloc::vec::Vec;

use crate::exactnum::Rational;
use crate::geometry::{self, ComplexStructure, Connection, Metric};
use crate::homalg::HomLieAlgebra;
use crate::linalg::{self, Matrix};
use crate::report::{Check, ValidationReport, Witness};
use crate::tensorcalc::{self, PurityCheck, Tensor};

struct Pieces {
    n: usize,
    a: Matrix,
    /// `gφ`, so that `⟨u, φe_z⟩ = (uᵀ gφ)_z`.
    g_phi: Matrix,
    /// `∇_{e_x}(φ∘J)` for each `x`.
    derivs: Vec<Matrix>,
}

impl Pieces {
    fn new(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure, conn: &Connection) -> Self {
        let a = j.composite(alg);
        let derivs = tensorcalc::nabla_endo(conn, &a);
        Pieces { n: alg.dim(), g_phi: g.matrix().mul(alg.phi()), a, derivs }
    }

    /// `⟨(∇_x A) e_y, φ e_z⟩`
    fn d_then_phi(&self, x: usize, y: usize, z: usize) -> Rational {
        linalg::dot(&self.derivs[x].column(y), &self.g_phi.column(z))
    }

    /// `⟨φ e_y, (∇_x A) e_z⟩`
    fn phi_then_d(&self, x: usize, y: usize, z: usize) -> Rational {
        linalg::dot(&self.g_phi.column(y), &self.derivs[x].column(z))
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n * n * n).map(move |t| (t / (n * n), (t / n) % n, t % n))
}

fn compare(name: &str, n: usize, lhs: impl Fn(usize, usize, usize) -> Rational, rhs: impl Fn(usize, usize, usize) -> Rational) -> Check {
    let witnesses = triples(n)
        .filter_map(|(x, y, z)| {
            let d = lhs(x, y, z) - rhs(x, y, z);
            (!d.is_zero()).then(|| Witness::scalar(&[x, y, z], d))
        })
        .collect();
    Check::from_witnesses(name, witnesses)
}

/// `⟨φy, (∇_x A) z⟩ = ⟨(∇_x A) y, φz⟩`
pub fn check_derivative_symmetry(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure, conn: &Connection) -> Check {
    let p = Pieces::new(alg, g, j, conn);
    compare("nabla(phi∘J) is phi-symmetric", p.n, |x, y, z| p.phi_then_d(x, y, z), |x, y, z| p.d_then_phi(x, y, z))
}

/// Tachibana operator of the metric in terms of `∇A`:
///
/// * `(Φg)(x,y,z) = ⟨(∇_y A)x, φz⟩ + ⟨φy, (∇_z A)x⟩ - ⟨(∇_x A)y, φz⟩`
/// * `(Φg)(x,y,z) + (Φg)(z,y,x) = 2⟨(∇_y A)x, φz⟩`
pub fn check_tachibana_decomposition(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure, conn: &Connection) -> ValidationReport {
    let p = Pieces::new(alg, g, j, conn);
    let phi_g = tensorcalc::tachibana(alg, j, &g.tensor(), PurityCheck::Skip).expect("dimensions checked").tensor;
    let t = |x: usize, y: usize, z: usize| phi_g.get(&[x, y, z]).clone();
    let mut report = ValidationReport::new();
    report.push(compare(
        "Tachibana of metric via nabla(phi∘J)",
        p.n,
        t,
        |x, y, z| p.d_then_phi(y, x, z) + p.phi_then_d(z, y, x) - p.d_then_phi(x, y, z),
    ));
    let two = Rational::from(2);
    report.push(compare(
        "symmetrized Tachibana of metric",
        p.n,
        |x, y, z| t(x, y, z) + t(z, y, x),
        |x, y, z| &two * p.d_then_phi(y, x, z),
    ));
    report
}

/// Twin metric identities:
///
/// * `(Φ≪≫)(x,y,z) = (Φg)(x,Ay,z) + ⟨N(x,y), φz⟩`
/// * `(∇_x≪≫)(y,z) = (∇_x g)(Ay,z) + ⟨(∇_x A)y, φz⟩`
pub fn check_twin_decomposition(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure, conn: &Connection) -> ValidationReport {
    let p = Pieces::new(alg, g, j, conn);
    let twin = Tensor::from_bilinear(&p.a.transpose().mul(g.matrix()));
    let metric = g.tensor();
    let tach = |w: &Tensor| tensorcalc::tachibana(alg, j, w, PurityCheck::Skip).expect("dimensions checked").tensor;
    let phi_twin = tach(&twin);
    let phi_g_a = tach(&metric).transform_slot(1, &p.a);
    let nij = geometry::nijenhuis(alg, j);
    let nij_paired = |x: usize, y: usize, z: usize| -> Rational {
        (0..p.n).map(|k| nij.get(&[k, x, y]) * p.g_phi.get(k, z)).sum()
    };
    let mut report = ValidationReport::new();
    report.push(compare(
        "Tachibana of twin metric",
        p.n,
        |x, y, z| phi_twin.get(&[x, y, z]).clone(),
        |x, y, z| phi_g_a.get(&[x, y, z]) + nij_paired(x, y, z),
    ));
    let d_twin = tensorcalc::cov_deriv_0q(alg, conn, &twin).expect("dimensions checked");
    let d_g_a = tensorcalc::cov_deriv_0q(alg, conn, &metric).expect("dimensions checked").transform_slot(1, &p.a);
    report.push(compare(
        "covariant derivative of twin metric",
        p.n,
        |x, y, z| d_twin.get(&[x, y, z]).clone(),
        |x, y, z| d_g_a.get(&[x, y, z]) + p.d_then_phi(x, y, z),
    ));
    report
}

/// For an almost Norden structure, the Tachibana operators of the metric and
/// of its twin vanish together.
pub fn check_twin_tachibana_equivalence(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> Check {
    let a = j.composite(alg);
    let twin = Tensor::from_bilinear(&a.transpose().mul(g.matrix()));
    let tach = |w: &Tensor| tensorcalc::tachibana(alg, j, w, PurityCheck::Skip).expect("dimensions checked").tensor;
    let g_zero = tach(&g.tensor()).is_zero();
    let twin_zero = tach(&twin).is_zero();
    if g_zero == twin_zero {
        Check::pass("Tachibana of metric and twin vanish together")
    } else {
        let note = alloc::format!("metric: {}, twin: {}", zero_word(g_zero), zero_word(twin_zero));
        Check::fail("Tachibana of metric and twin vanish together", alloc::vec![Witness::note_only(note)])
    }
}

fn zero_word(zero: bool) -> &'static str {
    if zero {
        "zero"
    } else {
        "nonzero"
    }
}

/// `N(x, y) = -N(y, x)`
pub fn check_nijenhuis_antisymmetry(alg: &HomLieAlgebra, j: &ComplexStructure) -> Check {
    let n = alg.dim();
    let t = geometry::nijenhuis(alg, j);
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x..n {
            let d: Vec<Rational> = (0..n).map(|k| t.get(&[k, x, y]) + t.get(&[k, y, x])).collect();
            if !linalg::is_zero_vector(&d) {
                witnesses.push(Witness::at(&[x, y], d));
            }
        }
    }
    Check::from_witnesses("Nijenhuis tensor is antisymmetric", witnesses)
}

/// `∇_{φx} ∘ ∇_y = ∇_{φy} ∘ ∇_x` as endomorphisms.
pub fn check_twisted_derivatives_commute(alg: &HomLieAlgebra, conn: &Connection) -> Check {
    let n = alg.dim();
    let phi = alg.phi();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let lhs = conn.along(&phi.column(x)).mul(conn.direction(y));
            let rhs = conn.along(&phi.column(y)).mul(conn.direction(x));
            let d = lhs.sub(&rhs);
            for z in 0..n {
                let col = d.column(z);
                if !linalg::is_zero_vector(&col) {
                    witnesses.push(Witness::at(&[x, y, z], col));
                }
            }
        }
    }
    Check::from_witnesses("nabla_{phi x} nabla_y = nabla_{phi y} nabla_x", witnesses)
}
