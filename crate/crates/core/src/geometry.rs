//! Metrics, complex structures, the Hom-Levi-Civita connection and the
//! Norden / Kähler-Norden conditions.

use alloc::format;
use alloc::vec::Vec;

use crate::exactnum::Rational;
use crate::homalg::HomLieAlgebra;
use crate::linalg::{self, Matrix, Vector};
use crate::report::{fail_note, Check, ValidationReport, Witness};
use crate::tensorcalc::{self, Endomorphism, PurityCheck, Tensor, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("connection system is singular: metric or twisting map is degenerate")]
    SingularSystem,
    #[error("precondition failed:\n{0}")]
    Precondition(ValidationReport),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

fn square(m: Matrix) -> Result<Matrix, GeometryError> {
    if !m.is_square() {
        return Err(GeometryError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m)
}

fn same_dim(alg: &HomLieAlgebra, found: usize) -> Result<(), GeometryError> {
    if alg.dim() != found {
        return Err(GeometryError::Dimension { expected: alg.dim(), found });
    }
    Ok(())
}

/// A bilinear form given by its Gram matrix `g[i][j] = ⟨e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric(Matrix);

impl Metric {
    pub fn new(gram: Matrix) -> Result<Self, GeometryError> {
        square(gram).map(Metric)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::dot(x, &self.0.mul_vec(y))
    }

    pub fn tensor(&self) -> Tensor {
        Tensor::from_bilinear(&self.0)
    }
}

/// A candidate complex structure `J`. The condition that matters is on the
/// composite `A = φ∘J`, which must square to `-Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure(Matrix);

impl ComplexStructure {
    pub fn new(j: Matrix) -> Result<Self, GeometryError> {
        square(j).map(ComplexStructure)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `A = φ∘J`
    pub fn composite(&self, alg: &HomLieAlgebra) -> Endomorphism {
        alg.phi().mul(&self.0)
    }
}

/// Connection coefficients: `∇_{e_i} e_j = Σ_k gamma(i, j, k) e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    n: usize,
    gamma: Vec<Rational>,
    directions: Vec<Matrix>,
}

impl Connection {
    /// From a table indexed `(i * n + j) * n + k`.
    pub fn from_coefficients(n: usize, gamma: Vec<Rational>) -> Self {
        assert_eq!(gamma.len(), n * n * n, "connection table length");
        let directions = (0..n)
            .map(|i| Matrix::from_fn(n, n, |k, j| gamma[(i * n + j) * n + k].clone()))
            .collect();
        Connection { n, gamma, directions }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.n + j) * self.n + k]
    }

    /// Coordinates of `∇_{e_i} e_j`.
    pub fn basis_derivative(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.n + j) * self.n;
        &self.gamma[start..start + self.n]
    }

    /// Matrix of `y ↦ ∇_{e_i} y`.
    pub fn direction_matrix(&self, i: usize) -> Matrix {
        self.directions[i].clone()
    }

    pub fn direction(&self, i: usize) -> &Matrix {
        &self.directions[i]
    }

    /// Matrix of `y ↦ ∇_x y`.
    pub fn along(&self, x: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.n);
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                out = out.add(&self.directions[a].scale(xa));
            }
        }
        out
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.along(x).mul_vec(y)
    }

    /// Nonzero `∇_{e_i} e_j` in `(i, j)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> + '_ {
        let n = self.n;
        (0..n * n)
            .map(move |ij| (ij / n, ij % n, self.basis_derivative(ij / n, ij % n)))
            .filter(|(_, _, v)| !linalg::is_zero_vector(v))
    }
}

pub fn check_metric(alg: &HomLieAlgebra, g: &Metric) -> ValidationReport {
    let mut report = ValidationReport::new();
    if g.dim() != alg.dim() {
        report.push(fail_note("metric dimension", &format!("metric is {0}x{0}, algebra has dimension {1}", g.dim(), alg.dim())));
        return report;
    }
    let m = g.matrix();
    let n = g.dim();
    let mut asym = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = m.get(i, j) - m.get(j, i);
            if !d.is_zero() {
                asym.push(Witness::scalar(&[i, j], d));
            }
        }
    }
    report.push(Check::from_witnesses("metric is symmetric", asym));
    let det = m.determinant();
    report.push(if det.is_zero() {
        Check::fail("metric is nondegenerate", alloc::vec![Witness { indices: Vec::new(), defect: alloc::vec![det], note: Some("det g = 0".into()) }])
    } else {
        Check::pass("metric is nondegenerate")
    });
    let phi = alg.phi();
    let pulled = phi.transpose().mul(m).mul(phi).sub(m);
    report.push(Check::from_witnesses("metric is phi-invariant", matrix_witnesses(&pulled, true)));
    report
}

/// Nonzero entries of `m` as `(i, j)` witnesses; `upper` restricts to
/// `i <= j` for symmetric defects.
fn matrix_witnesses(m: &Matrix, upper: bool) -> Vec<Witness> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in if upper { i } else { 0 }..m.cols() {
            if !m.get(i, j).is_zero() {
                out.push(Witness::scalar(&[i, j], m.get(i, j).clone()));
            }
        }
    }
    out
}

/// Nonzero columns of `m` as single-index vector witnesses.
fn column_witnesses(m: &Matrix) -> Vec<Witness> {
    (0..m.cols())
        .map(|j| (j, m.column(j)))
        .filter(|(_, c)| !linalg::is_zero_vector(c))
        .map(|(j, c)| Witness::at(&[j], c))
        .collect()
}

pub fn check_complex(alg: &HomLieAlgebra, j: &ComplexStructure) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = alg.dim();
    if j.dim() != n {
        report.push(fail_note("complex structure dimension", &format!("J is {0}x{0}, algebra has dimension {1}", j.dim(), n)));
        return report;
    }
    if n % 2 == 1 {
        report.push(fail_note("even dimension", &format!("odd dimension {}", n)));
    } else {
        report.push(Check::pass("even dimension"));
    }
    let a = j.composite(alg);
    let square_defect = a.mul(&a).add(&Matrix::identity(n));
    report.push(Check::from_witnesses("(phi∘J)² = -Id", column_witnesses(&square_defect)));
    let comm = a.sub(&j.matrix().mul(alg.phi()));
    report.push(Check::from_witnesses("phi commutes with J", column_witnesses(&comm)));
    report
}

/// Nijenhuis tensor of `A = φ∘J` as a `(1, 2)` tensor:
/// `N(x, y) = [Ax, Ay] - A[Ax, y] - A[x, Ay] - [x, y]`.
pub fn nijenhuis(alg: &HomLieAlgebra, j: &ComplexStructure) -> Tensor {
    let n = alg.dim();
    let a = j.composite(alg);
    let images: Vec<Vector> = (0..n).map(|i| a.column(i)).collect();
    let mut t = Tensor::zeros(1, 2, n);
    for x in 0..n {
        for y in 0..n {
            let ex = linalg::basis(n, x);
            let ey = linalg::basis(n, y);
            let mut v = alg.bracket(&images[x], &images[y]);
            v = linalg::sub(&v, &a.mul_vec(&alg.bracket(&images[x], &ey)));
            v = linalg::sub(&v, &a.mul_vec(&alg.bracket(&ex, &images[y])));
            v = linalg::sub(&v, alg.basis_bracket(x, y));
            for (k, c) in v.into_iter().enumerate() {
                t.set(&[k, x, y], c);
            }
        }
    }
    t
}

fn vector_at(t: &Tensor, x: usize, y: usize) -> Vector {
    (0..t.dim()).map(|k| t.get(&[k, x, y]).clone()).collect()
}

pub fn check_integrable(alg: &HomLieAlgebra, j: &ComplexStructure) -> Check {
    let t = nijenhuis(alg, j);
    let n = alg.dim();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let v = vector_at(&t, x, y);
            if !linalg::is_zero_vector(&v) {
                witnesses.push(Witness::at(&[x, y], v));
            }
        }
    }
    Check::from_witnesses("Nijenhuis tensor vanishes", witnesses)
}

pub const NORDEN: &str = "Norden condition";
pub const NORDEN_SYMMETRIC_FORM: &str = "phi∘J is g-symmetric";

/// The Norden identity `⟨Ax, Ay⟩ = -⟨x, y⟩` and, checked separately, the
/// equivalent statement that `A` is self-adjoint for `g`.
pub fn check_norden(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> ValidationReport {
    let mut report = ValidationReport::new();
    if g.dim() != alg.dim() || j.dim() != alg.dim() {
        report.push(fail_note(NORDEN, "dimension mismatch"));
        return report;
    }
    let a = j.composite(alg);
    let m = g.matrix();
    let defect = a.transpose().mul(m).mul(&a).add(m);
    report.push(Check::from_witnesses(NORDEN, matrix_witnesses(&defect, true)));
    let adj = a.transpose().mul(m).sub(&m.mul(&a));
    report.push(Check::from_witnesses(NORDEN_SYMMETRIC_FORM, matrix_witnesses(&adj, false)));
    report
}

/// Metric, complex and Norden checks together.
pub fn check_almost_norden(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> ValidationReport {
    let mut report = check_metric(alg, g);
    report.extend(check_complex(alg, j));
    if report.passed() {
        let norden = check_norden(alg, g, j);
        report.push(norden.get(NORDEN).expect("norden check").clone());
    }
    report
}

fn require(report: ValidationReport) -> Result<(), GeometryError> {
    if report.passed() {
        Ok(())
    } else {
        let failures = report.failures().cloned().collect();
        Err(GeometryError::Precondition(ValidationReport { checks: failures }))
    }
}

/// Hom-Levi-Civita connection: the unique `∇` that is torsion free and
/// satisfies `⟨∇_x y, φz⟩ = -⟨φy, ∇_x z⟩`, from
/// `2⟨∇_x y, φz⟩ = ⟨[x,y], φz⟩ + ⟨[z,y], φx⟩ + ⟨[z,x], φy⟩`.
pub fn levi_civita(alg: &HomLieAlgebra, g: &Metric) -> Result<Connection, GeometryError> {
    same_dim(alg, g.dim())?;
    let n = alg.dim();
    // m[k][l] = ⟨e_k, φe_l⟩, so ⟨v, φe_l⟩ = (mᵀ v)_l.
    let m = g.matrix().mul(alg.phi());
    let mt = m.transpose();
    let lu = mt.lu().ok_or(GeometryError::SingularSystem)?;
    let paired: Vec<Vector> = (0..n * n).map(|ij| mt.mul_vec(alg.basis_bracket(ij / n, ij % n))).collect();
    let p = |a: usize, b: usize, l: usize| &paired[a * n + b][l];
    let half = Rational::ratio(1, 2);
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let rhs: Vector = (0..n).map(|l| (p(i, j, l) + p(l, j, i) + p(l, i, j)) * &half).collect();
            gamma.extend(lu.solve(&rhs));
        }
    }
    Ok(Connection::from_coefficients(n, gamma))
}

/// `∇_x y - ∇_y x = [x, y]`
pub fn check_torsion_free(alg: &HomLieAlgebra, conn: &Connection) -> Check {
    let n = alg.dim();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let t = linalg::sub(&linalg::sub(conn.basis_derivative(i, j), conn.basis_derivative(j, i)), alg.basis_bracket(i, j));
            if !linalg::is_zero_vector(&t) {
                witnesses.push(Witness::at(&[i, j], t));
            }
        }
    }
    Check::from_witnesses("torsion free", witnesses)
}

/// `⟨∇_x y, φz⟩ + ⟨φy, ∇_x z⟩ = 0`
pub fn check_metric_compat(alg: &HomLieAlgebra, g: &Metric, conn: &Connection) -> Check {
    let n = alg.dim();
    let m = g.matrix().mul(alg.phi());
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y..n {
                // ⟨u, φz⟩ = uᵀ m e_z and ⟨φy, w⟩ = (m e_y)ᵀ w by symmetry of g.
                let a = linalg::dot(conn.basis_derivative(x, y), &m.column(z));
                let b = linalg::dot(conn.basis_derivative(x, z), &m.column(y));
                let d = a + b;
                if !d.is_zero() {
                    witnesses.push(Witness::scalar(&[x, y, z], d));
                }
            }
        }
    }
    Check::from_witnesses("metric compatible", witnesses)
}

pub const KAHLER: &str = "nabla(phi∘J) vanishes";
pub const KAHLER_ANTICOMMUTING_FORM: &str = "nabla along phi∘J anticommutes with phi∘J";

/// `∇A = 0` for `A = φ∘J`, and the equivalent
/// `(∇_{Ax} A) y = -A (∇_x A) y`, with no preconditions.
pub fn kahler_checks(conn: &Connection, a: &Endomorphism) -> ValidationReport {
    let n = conn.dim();
    let derivs = tensorcalc::nabla_endo(conn, a);
    let mut zero = Vec::new();
    let mut anti = Vec::new();
    for i in 0..n {
        for (j, col) in (0..n).map(|j| (j, derivs[i].column(j))) {
            if !linalg::is_zero_vector(&col) {
                zero.push(Witness::at(&[i, j], col));
            }
        }
        let along_a = tensorcalc::nabla_endo_along(&derivs, &a.column(i));
        let defect = along_a.add(&a.mul(&derivs[i]));
        for j in 0..n {
            let col = defect.column(j);
            if !linalg::is_zero_vector(&col) {
                anti.push(Witness::at(&[i, j], col));
            }
        }
    }
    let mut report = ValidationReport::new();
    report.push(Check::from_witnesses(KAHLER, zero));
    report.push(Check::from_witnesses(KAHLER_ANTICOMMUTING_FORM, anti));
    report
}

/// Kähler-Norden test. Fails with [`GeometryError::Precondition`] unless
/// `(g, J)` is an almost Norden structure.
pub fn check_kahler(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> Result<ValidationReport, GeometryError> {
    require(check_almost_norden(alg, g, j))?;
    let conn = levi_civita(alg, g)?;
    Ok(kahler_checks(&conn, &j.composite(alg)))
}

/// `[Ax, Ay] = [x, y]`
pub fn check_abelian(alg: &HomLieAlgebra, j: &ComplexStructure) -> Check {
    let n = alg.dim();
    let a = j.composite(alg);
    let images: Vec<Vector> = (0..n).map(|i| a.column(i)).collect();
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let d = linalg::sub(&alg.bracket(&images[x], &images[y]), alg.basis_bracket(x, y));
            if !linalg::is_zero_vector(&d) {
                witnesses.push(Witness::at(&[x, y], d));
            }
        }
    }
    Check::from_witnesses("abelian complex structure", witnesses)
}

/// Identities that hold for abelian Kähler-Norden structures:
/// `∇_{Ax} = -A∇_x` and `2∇_x y = [x, y] - A[x, Ay]`.
pub fn abelian_kahler_checks(alg: &HomLieAlgebra, j: &ComplexStructure, conn: &Connection) -> ValidationReport {
    let n = alg.dim();
    let a = j.composite(alg);
    let mut anti = Vec::new();
    let mut formula = Vec::new();
    let two = Rational::from(2);
    for x in 0..n {
        let ax = a.column(x);
        let defect = conn.along(&ax).add(&a.mul(conn.direction(x)));
        anti.extend(
            (0..n)
                .map(|y| (y, defect.column(y)))
                .filter(|(_, c)| !linalg::is_zero_vector(c))
                .map(|(y, c)| Witness::at(&[x, y], c)),
        );
        for y in 0..n {
            let lhs = linalg::scale(&two, conn.basis_derivative(x, y));
            let ay = a.column(y);
            let ex = linalg::basis(n, x);
            let rhs = linalg::sub(alg.basis_bracket(x, y), &a.mul_vec(&alg.bracket(&ex, &ay)));
            let d = linalg::sub(&lhs, &rhs);
            if !linalg::is_zero_vector(&d) {
                formula.push(Witness::at(&[x, y], d));
            }
        }
    }
    let mut report = ValidationReport::new();
    report.push(Check::from_witnesses("nabla along phi∘J is -(phi∘J)∘nabla", anti));
    report.push(Check::from_witnesses("2 nabla_x y = [x,y] - A[x,Ay]", formula));
    report
}

/// Twin metric `≪x, y≫ = ⟨Ax, y⟩`; requires an almost Norden structure.
pub fn twin_metric(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> Result<Metric, GeometryError> {
    require(check_almost_norden(alg, g, j))?;
    let a = j.composite(alg);
    Metric::new(a.transpose().mul(g.matrix()))
}

pub const TACHIBANA_OF_METRIC: &str = "Tachibana operator of metric vanishes";

/// Purity of `g`, vanishing of its Tachibana operator, and integrability.
/// The structure is holomorphic Norden when all three pass.
pub fn check_holomorphic_metric(alg: &HomLieAlgebra, g: &Metric, j: &ComplexStructure) -> ValidationReport {
    let mut report = ValidationReport::new();
    let a = j.composite(alg);
    let tensor = g.tensor();
    report.push(tensorcalc::purity_check(&tensor, &a));
    let phi_g = tensorcalc::tachibana(alg, j, &tensor, PurityCheck::Skip).expect("dimensions checked").tensor;
    let witnesses = phi_g.nonzero().map(|(idx, v)| Witness::scalar(&idx, v.clone())).collect();
    report.push(Check::from_witnesses(TACHIBANA_OF_METRIC, witnesses));
    report.push(check_integrable(alg, j));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn e(n: usize, i: usize) -> Vector {
        linalg::basis(n, i)
    }

    /// Two-dimensional non-abelian Lie algebra `[e1, e2] = e2` with `φ = Id`.
    fn affine() -> HomLieAlgebra {
        HomLieAlgebra::new(2, alloc::vec![(0, 1, e(2, 1))], Matrix::identity(2)).unwrap()
    }

    #[test]
    fn connection_of_affine_algebra() {
        let alg = affine();
        let g = Metric::new(Matrix::identity(2)).unwrap();
        let conn = levi_civita(&alg, &g).unwrap();
        assert!(check_torsion_free(&alg, &conn).passed);
        assert!(check_metric_compat(&alg, &g, &conn).passed);
        // classical left-invariant connection: ∇_{e2} e1 = -e2, ∇_{e2} e2 = e1
        assert_eq!(conn.basis_derivative(1, 0), &[q(0), q(-1)][..]);
        assert_eq!(conn.basis_derivative(1, 1), &[q(1), q(0)][..]);
        assert!(linalg::is_zero_vector(conn.basis_derivative(0, 0)));
        assert!(linalg::is_zero_vector(conn.basis_derivative(0, 1)));
    }

    #[test]
    fn degenerate_metric_gives_singular_system() {
        let g = Metric::new(Matrix::from_i64_rows(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(levi_civita(&affine(), &g), Err(GeometryError::SingularSystem));
        let report = check_metric(&affine(), &g);
        assert!(!report.get("metric is nondegenerate").unwrap().passed);
    }

    #[test]
    fn odd_dimension_is_not_almost_complex() {
        let alg = HomLieAlgebra::new(3, Vec::new(), Matrix::identity(3)).unwrap();
        let j = ComplexStructure::new(Matrix::identity(3)).unwrap();
        let report = check_complex(&alg, &j);
        let check = report.get("even dimension").unwrap();
        assert!(!check.passed);
        assert_eq!(check.witnesses[0].note.as_deref(), Some("odd dimension 3"));
    }

    #[test]
    fn abelian_algebra_standard_structure() {
        let alg = HomLieAlgebra::new(2, Vec::new(), Matrix::identity(2)).unwrap();
        let j = ComplexStructure::new(Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let g = Metric::new(Matrix::from_i64_rows(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(check_complex(&alg, &j).passed());
        assert!(check_norden(&alg, &g, &j).passed());
        assert!(check_kahler(&alg, &g, &j).unwrap().passed());
        assert!(check_holomorphic_metric(&alg, &g, &j).passed());
        assert!(check_abelian(&alg, &j).passed);
        let twin = twin_metric(&alg, &g, &j).unwrap();
        assert_eq!(twin.matrix(), &Matrix::from_i64_rows(&[&[0, -1], &[-1, 0]]));
    }

    #[test]
    fn kahler_needs_norden() {
        let alg = HomLieAlgebra::new(2, Vec::new(), Matrix::identity(2)).unwrap();
        let j = ComplexStructure::new(Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let g = Metric::new(Matrix::identity(2)).unwrap();
        match check_kahler(&alg, &g, &j) {
            Err(GeometryError::Precondition(r)) => assert_eq!(r.checks[0].name, NORDEN),
            other => panic!("unexpected {:?}", other),
        }
        assert!(twin_metric(&alg, &g, &j).is_err());
    }

    #[test]
    fn connection_along_vector_is_linear() {
        let alg = affine();
        let g = Metric::new(Matrix::from_i64_rows(&[&[2, 1], &[1, 3]])).unwrap();
        let conn = levi_civita(&alg, &g).unwrap();
        let x = alloc::vec![q(2), q(-1)];
        let y = alloc::vec![q(1), q(5)];
        let direct = linalg::add(
            &linalg::scale(&q(2), &conn.apply(&e(2, 0), &y)),
            &linalg::scale(&q(-1), &conn.apply(&e(2, 1), &y)),
        );
        assert_eq!(conn.apply(&x, &y), direct);
    }
}
