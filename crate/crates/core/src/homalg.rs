//! Hom-Lie algebras given by structure constants and a twisting map.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::linalg::{self, Matrix, Vector};
use crate::report::{Check, ValidationReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected a {expected}x{expected} matrix, found {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("expected {expected} coefficients, found {found}")]
    Length { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("diagonal bracket [e{0},e{0}] must be zero")]
    DiagonalBracket(usize),
    #[error("duplicate bracket entry for [e{0},e{1}]")]
    DuplicateBracket(usize, usize),
    #[error("structure constants not antisymmetric at [e{0},e{1}]")]
    NotAntisymmetric(usize, usize),
    #[error("twisting map is singular (determinant 0)")]
    SingularPhi,
}

/// Finite-dimensional Hom-Lie algebra data: antisymmetric structure
/// constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` and the twisting map `φ`.
///
/// The Hom-Jacobi and morphism conditions are checked by
/// [`HomLieAlgebra::validate`], not enforced at construction. Invertibility of
/// `φ` is likewise reported by [`classify_phi`]; loaders that need a regular
/// algebra use [`HomLieAlgebra::new_regular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAlgebra {
    n: usize,
    c: Vec<Rational>,
    phi: Matrix,
}

impl HomLieAlgebra {
    /// Builds from the brackets `[e_i, e_j]` for the listed 0-based pairs;
    /// each unordered pair may appear once, in either order, and unlisted
    /// brackets are zero.
    pub fn new<I>(n: usize, brackets: I, phi: Matrix) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        if n == 0 {
            return Err(StructureError::ZeroDimension);
        }
        check_square(&phi, n)?;
        let mut c = vec![Rational::zero(); n * n * n];
        let mut seen = vec![false; n * n];
        for (i, j, coeffs) in brackets {
            for index in [i, j] {
                if index >= n {
                    return Err(StructureError::IndexOutOfRange { index, dim: n });
                }
            }
            if coeffs.len() != n {
                return Err(StructureError::Length { expected: n, found: coeffs.len() });
            }
            if i == j {
                if linalg::is_zero_vector(&coeffs) {
                    continue;
                }
                return Err(StructureError::DiagonalBracket(i + 1));
            }
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            if seen[lo * n + hi] {
                return Err(StructureError::DuplicateBracket(lo + 1, hi + 1));
            }
            seen[lo * n + hi] = true;
            for (k, v) in coeffs.into_iter().enumerate() {
                c[(j * n + i) * n + k] = -&v;
                c[(i * n + j) * n + k] = v;
            }
        }
        Ok(HomLieAlgebra { n, c, phi })
    }

    /// Like [`HomLieAlgebra::new`] but rejects a singular `φ`.
    pub fn new_regular<I>(n: usize, brackets: I, phi: Matrix) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let alg = Self::new(n, brackets, phi)?;
        if alg.phi.determinant().is_zero() {
            return Err(StructureError::SingularPhi);
        }
        Ok(alg)
    }

    /// Builds from a full `n³` table indexed `(i * n + j) * n + k`.
    pub fn from_structure_constants(n: usize, c: Vec<Rational>, phi: Matrix) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::ZeroDimension);
        }
        check_square(&phi, n)?;
        if c.len() != n * n * n {
            return Err(StructureError::Length { expected: n * n * n, found: c.len() });
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if c[(i * n + j) * n + k] != -&c[(j * n + i) * n + k] {
                        return Err(StructureError::NotAntisymmetric(i + 1, j + 1));
                    }
                }
            }
        }
        Ok(HomLieAlgebra { n, c, phi })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    /// Same brackets with a different twisting map.
    pub fn with_phi(&self, phi: Matrix) -> Result<Self, StructureError> {
        check_square(&phi, self.n)?;
        Ok(HomLieAlgebra { n: self.n, c: self.c.clone(), phi })
    }

    pub fn structure_constants(&self) -> &[Rational] {
        &self.c
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.n + j) * self.n;
        &self.c[start..start + self.n]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.n, "bracket argument length");
        assert_eq!(y.len(), self.n, "bracket argument length");
        let mut out = linalg::zero_vector(self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                linalg::axpy(&mut out, &(xi * yj), self.basis_bracket(i, j));
            }
        }
        out
    }

    pub fn apply_phi(&self, x: &[Rational]) -> Vector {
        self.phi.mul_vec(x)
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vector> = (0..self.n).map(|j| self.bracket(x, &linalg::basis(self.n, j))).collect();
        Matrix::from_columns(&cols)
    }

    /// Morphism and Hom-Jacobi checks, plus the classical Jacobi identity as
    /// an informational check.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        report.push(check_morphism(self));
        report.push(check_hom_jacobi(self));
        report.push(check_classical_jacobi(self).informational());
        report
    }
}

fn check_square(m: &Matrix, n: usize) -> Result<(), StructureError> {
    if m.rows() != n || m.cols() != n {
        return Err(StructureError::Shape { expected: n, rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

/// `φ[e_i, e_j] = [φe_i, φe_j]` for all `i < j`.
pub fn check_morphism(alg: &HomLieAlgebra) -> Check {
    let n = alg.n;
    let images: Vec<Vector> = (0..n).map(|i| alg.phi.column(i)).collect();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = alg.apply_phi(alg.basis_bracket(i, j));
            let rhs = alg.bracket(&images[i], &images[j]);
            let defect = linalg::sub(&lhs, &rhs);
            if !linalg::is_zero_vector(&defect) {
                witnesses.push(Witness::at(&[i, j], defect));
            }
        }
    }
    Check::from_witnesses("phi is a bracket morphism", witnesses)
}

fn jacobi_defects(alg: &HomLieAlgebra, twist: &Matrix) -> Vec<Witness> {
    // The cyclic sum is alternating, so increasing triples suffice.
    let n = alg.n;
    let images: Vec<Vector> = (0..n).map(|i| twist.column(i)).collect();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut sum = alg.bracket(&images[i], alg.basis_bracket(j, k));
                let t = alg.bracket(&images[j], alg.basis_bracket(k, i));
                linalg::axpy(&mut sum, &Rational::one(), &t);
                let t = alg.bracket(&images[k], alg.basis_bracket(i, j));
                linalg::axpy(&mut sum, &Rational::one(), &t);
                if !linalg::is_zero_vector(&sum) {
                    witnesses.push(Witness::at(&[i, j, k], sum));
                }
            }
        }
    }
    witnesses
}

/// `↺ [φx, [y, z]] = 0` on basis triples.
pub fn check_hom_jacobi(alg: &HomLieAlgebra) -> Check {
    Check::from_witnesses("Hom-Jacobi identity", jacobi_defects(alg, &alg.phi))
}

/// The untwisted Jacobi identity `↺ [x, [y, z]] = 0`.
pub fn check_classical_jacobi(alg: &HomLieAlgebra) -> Check {
    Check::from_witnesses("classical Jacobi identity", jacobi_defects(alg, &Matrix::identity(alg.n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiFlags {
    /// `φ ≠ Id`
    pub proper: bool,
    /// `φ² = Id`
    pub involutive: bool,
    /// `det φ ≠ 0`
    pub regular: bool,
}

pub fn classify_phi(alg: &HomLieAlgebra) -> PhiFlags {
    PhiFlags {
        proper: !alg.phi.is_identity(),
        involutive: alg.phi.mul(&alg.phi).is_identity(),
        regular: !alg.phi.determinant().is_zero(),
    }
}

/// Witness describing why `φ` is not regular.
pub fn singular_phi_witness(alg: &HomLieAlgebra) -> Option<Witness> {
    let det = alg.phi.determinant();
    det.is_zero().then(|| Witness { indices: Vec::new(), defect: vec![det], note: Some("det phi = 0".into()) })
}
