//! Curvature of the Hom-Levi-Civita connection and the left-symmetric
//! structure it induces.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactnum::Rational;
use crate::geometry::{self, ComplexStructure, Connection, Metric};
use crate::homalg::{classify_phi, HomLieAlgebra};
use crate::linalg::{self, Matrix, Vector};
use crate::report::{Check, ValidationReport, Witness};
use crate::tensorcalc::{self, PurityCheck, Tachibana, Tensor};

/// `K(x, y) = ∇_{φx}∘∇_y - ∇_{φy}∘∇_x - ∇_{[x,y]}∘φ` in two forms:
/// `k13[l, i, j, k]` is the `e_l` coefficient of `K(e_i, e_j) e_k`, and
/// `k04[i, j, k, l] = ⟨K(e_i, e_j) e_k, e_l⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    pub k13: Tensor,
    pub k04: Tensor,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.k13.dim()
    }

    /// Matrix of `z ↦ K(e_i, e_j) z`.
    pub fn operator(&self, i: usize, j: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |l, k| self.k13.get(&[l, i, j, k]).clone())
    }

    /// Matrix of `z ↦ K(x, y) z` for arbitrary `x`, `y`.
    pub fn operator_along(&self, x: &[Rational], y: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = xi * yj;
                if !c.is_zero() {
                    out = out.add(&self.operator(i, j).scale(&c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.k13.is_zero()
    }
}

pub fn curvature(alg: &HomLieAlgebra, g: &Metric, conn: &Connection) -> CurvatureTensor {
    let n = alg.dim();
    let phi = alg.phi();
    let mut k13 = Tensor::zeros(1, 3, n);
    for i in 0..n {
        let phi_i = conn.along(&phi.column(i));
        for j in 0..n {
            let phi_j = conn.along(&phi.column(j));
            let op = phi_i
                .mul(conn.direction(j))
                .sub(&phi_j.mul(conn.direction(i)))
                .sub(&conn.along(alg.basis_bracket(i, j)).mul(phi));
            for l in 0..n {
                for k in 0..n {
                    k13.set(&[l, i, j, k], op.get(l, k).clone());
                }
            }
        }
    }
    let k04 = lower(&k13, g);
    CurvatureTensor { k13, k04 }
}

fn lower(k13: &Tensor, g: &Metric) -> Tensor {
    let n = k13.dim();
    let m = g.matrix();
    Tensor::from_fn(0, 4, n, |ix| {
        (0..n).map(|s| k13.get(&[s, ix[0], ix[1], ix[2]]) * m.get(s, ix[3])).sum()
    })
}

pub const ANTISYMMETRIC_FIRST_PAIR: &str = "curvature antisymmetric in first pair";
pub const ANTISYMMETRIC_LAST_PAIR: &str = "curvature antisymmetric in last pair";
pub const FIRST_BIANCHI: &str = "first Bianchi identity";
pub const SECOND_BIANCHI: &str = "second Bianchi identity";
pub const CURVATURE_PURE: &str = "curvature is pure";
pub const CURVATURE_COMMUTES: &str = "curvature commutes with phi∘J";

/// Curvature symmetries. Checks that need `J` are included only when one is
/// given. Antisymmetry in the last pair is informational unless `φ` is
/// involutive.
pub fn check_curvature_identities(
    alg: &HomLieAlgebra,
    j: Option<&ComplexStructure>,
    conn: &Connection,
    k: &CurvatureTensor,
) -> ValidationReport {
    let n = alg.dim();
    let mut report = ValidationReport::new();

    let mut first = Vec::new();
    let mut bianchi = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let d: Vector = (0..n).map(|l| k.k13.get(&[l, x, y, z]) + k.k13.get(&[l, y, x, z])).collect();
                if y >= x && !linalg::is_zero_vector(&d) {
                    first.push(Witness::at(&[x, y, z], d));
                }
                let cyc: Vector = (0..n)
                    .map(|l| k.k13.get(&[l, x, y, z]) + k.k13.get(&[l, y, z, x]) + k.k13.get(&[l, z, x, y]))
                    .collect();
                if !linalg::is_zero_vector(&cyc) {
                    bianchi.push(Witness::at(&[x, y, z], cyc));
                }
            }
        }
    }
    report.push(Check::from_witnesses(ANTISYMMETRIC_FIRST_PAIR, first));

    let mut last = Vec::new();
    for (idx, v) in k.k04.nonzero() {
        if idx[2] <= idx[3] {
            let d = v + k.k04.get(&[idx[0], idx[1], idx[3], idx[2]]);
            if !d.is_zero() {
                last.push(Witness::scalar(&idx, d));
            }
        }
    }
    let last = Check::from_witnesses(ANTISYMMETRIC_LAST_PAIR, last);
    report.push(if classify_phi(alg).involutive { last } else { last.informational() });
    report.push(Check::from_witnesses(FIRST_BIANCHI, bianchi));

    let dk = tensorcalc::cov_deriv_0q(alg, conn, &k.k04).expect("dimensions checked");
    let mut second = Vec::new();
    let n2 = n * n;
    for flat in 0..n2 * n * n2 {
        let (x, y, z) = (flat / (n2 * n2), (flat / (n * n2)) % n, (flat / n2) % n);
        let (w, t) = ((flat / n) % n, flat % n);
        let s = dk.get(&[x, y, z, w, t]) + dk.get(&[y, z, x, w, t]) + dk.get(&[z, x, y, w, t]);
        if !s.is_zero() {
            second.push(Witness::scalar(&[x, y, z, w, t], s));
        }
    }
    report.push(Check::from_witnesses(SECOND_BIANCHI, second));

    if let Some(j) = j {
        let a = j.composite(alg);
        report.push(named(tensorcalc::purity_check(&k.k04, &a), CURVATURE_PURE));
        let mut comm = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let op = k.operator(x, y);
                let d = op.mul(&a).sub(&a.mul(&op));
                for z in 0..n {
                    let col = d.column(z);
                    if !linalg::is_zero_vector(&col) {
                        comm.push(Witness::at(&[x, y, z], col));
                    }
                }
            }
        }
        report.push(Check::from_witnesses(CURVATURE_COMMUTES, comm));
    }
    report
}

fn named(mut check: Check, name: &str) -> Check {
    check.name = name.into();
    check
}

/// Tachibana operator of the `(0, 4)` curvature tensor; purity is not
/// required of the input.
pub fn tachibana_curvature(alg: &HomLieAlgebra, j: &ComplexStructure, k: &CurvatureTensor) -> Tachibana {
    tensorcalc::tachibana(alg, j, &k.k04, PurityCheck::Skip).expect("dimensions checked")
}

pub const CURVATURE_HOLOMORPHIC: &str = "Tachibana of curvature vanishes";

pub fn check_curvature_holomorphic(alg: &HomLieAlgebra, j: &ComplexStructure, k: &CurvatureTensor) -> Check {
    let t = tachibana_curvature(alg, j, k).tensor;
    let witnesses = t.nonzero().map(|(idx, v)| Witness::scalar(&idx, v.clone())).collect();
    Check::from_witnesses(CURVATURE_HOLOMORPHIC, witnesses)
}

/// `z ↦ ass(e_u, e_v, z)` for the product `x·y = ∇_x y`, where
/// `ass(u, v, w) = (u·v)·φw - φu·(v·w)`.
pub fn associator(alg: &HomLieAlgebra, conn: &Connection, u: usize, v: usize) -> Matrix {
    let phi = alg.phi();
    conn.along(conn.basis_derivative(u, v))
        .mul(phi)
        .sub(&conn.along(&phi.column(u)).mul(conn.direction(v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftSymmetricDefect {
    /// `defect[l, u, v, w]`: `e_l` coefficient of
    /// `ass(e_u, e_v, e_w) - ass(e_v, e_u, e_w)`.
    pub defect: Tensor,
    /// `u·v - v·u = [u, v]`
    pub commutator: Check,
}

pub fn left_symmetric_defect(alg: &HomLieAlgebra, conn: &Connection) -> LeftSymmetricDefect {
    let n = alg.dim();
    let ass: Vec<Matrix> = (0..n * n).map(|uv| associator(alg, conn, uv / n, uv % n)).collect();
    let mut defect = Tensor::zeros(1, 3, n);
    for u in 0..n {
        for v in 0..n {
            let d = ass[u * n + v].sub(&ass[v * n + u]);
            for l in 0..n {
                for w in 0..n {
                    defect.set(&[l, u, v, w], d.get(l, w).clone());
                }
            }
        }
    }
    let commutator = named(geometry::check_torsion_free(alg, conn), "product commutator is the bracket");
    LeftSymmetricDefect { defect, commutator }
}

/// `D = -K` as `(1, 3)` tensors.
pub fn check_defect_is_minus_curvature(d: &LeftSymmetricDefect, k: &CurvatureTensor) -> Check {
    let sum = d.defect.add(&k.k13);
    let witnesses = sum.nonzero().map(|(idx, v)| Witness::scalar(&idx, v.clone())).collect();
    Check::from_witnesses("left-symmetric defect equals -K", witnesses)
}

pub fn check_flat(k: &CurvatureTensor) -> Check {
    let witnesses = k.k13.nonzero().map(|(idx, v)| Witness::scalar(&idx, v.clone())).collect();
    Check::from_witnesses("curvature vanishes", witnesses)
}

pub fn check_left_symmetric(d: &LeftSymmetricDefect) -> Check {
    let witnesses = d.defect.nonzero().map(|(idx, v)| Witness::scalar(&idx, v.clone())).collect();
    Check::from_witnesses("left-symmetric defect vanishes", witnesses)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatTheorem {
    /// The hypotheses (holomorphic Norden with abelian `J`) do not hold.
    NotApplicable { reason: String },
    Checked(ValidationReport),
}

/// For a holomorphic Norden structure with abelian `J`: `K(Ax, Ay) = -K(x, y)`,
/// `K = 0`, `D = 0` and `D = -K`.
pub fn check_flat_theorem(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> FlatTheorem {
    let norden = geometry::check_almost_norden(alg, g, j);
    if !norden.passed() {
        return FlatTheorem::NotApplicable { reason: "not an almost Norden structure".into() };
    }
    if !geometry::check_holomorphic_metric(alg, g, j).passed() {
        return FlatTheorem::NotApplicable { reason: "metric is not holomorphic".into() };
    }
    if !geometry::check_abelian(alg, j).passed {
        return FlatTheorem::NotApplicable { reason: "complex structure is not abelian".into() };
    }
    let conn = match geometry::levi_civita(alg, g) {
        Ok(c) => c,
        Err(_) => return FlatTheorem::NotApplicable { reason: "connection system is singular".into() },
    };
    let n = alg.dim();
    let a = j.composite(alg);
    let k = curvature(alg, g, &conn);
    let mut rotated = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let d = k.operator_along(&a.column(x), &a.column(y)).add(&k.operator(x, y));
            for z in 0..n {
                let col = d.column(z);
                if !linalg::is_zero_vector(&col) {
                    rotated.push(Witness::at(&[x, y, z], col));
                }
            }
        }
    }
    let d = left_symmetric_defect(alg, &conn);
    let mut report = ValidationReport::new();
    report.push(Check::from_witnesses("K(Ax,Ay) = -K(x,y)", rotated));
    report.push(check_flat(&k));
    report.push(check_left_symmetric(&d));
    report.push(check_defect_is_minus_curvature(&d, &k));
    FlatTheorem::Checked(report)
}
