//! Component tensors, covariant derivatives and Tachibana operators.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::Rational;
use crate::geometry::{ComplexStructure, Connection};
use crate::homalg::HomLieAlgebra;
use crate::linalg::{self, Matrix};
use crate::report::{Check, Witness};

/// Linear map of the algebra, as a matrix in the column convention.
pub type Endomorphism = Matrix;

/// A `(p, q)` tensor stored by components. Indices are ordered with the `p`
/// contravariant slots first, then the `q` covariant slots, row-major.
///
/// For a `(1, q)` tensor, `get(&[k, i1, .., iq])` is the `e_k` coefficient of
/// the value on `(e_i1, .., e_iq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    contravariant: usize,
    covariant: usize,
    dim: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("expected a covariant tensor, found type ({0},{1})")]
    NotCovariant(usize, usize),
    #[error("tensor dimension {found} does not match algebra dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("tensor is not pure with respect to phi∘J")]
    NotPure(Check),
}

impl Tensor {
    pub fn zeros(contravariant: usize, covariant: usize, dim: usize) -> Self {
        let len = dim.pow((contravariant + covariant) as u32);
        Tensor { contravariant, covariant, dim, data: vec![Rational::zero(); len] }
    }

    pub fn from_fn(
        contravariant: usize,
        covariant: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> Rational,
    ) -> Self {
        let mut t = Self::zeros(contravariant, covariant, dim);
        let mut idx = vec![0; t.order()];
        for flat in 0..t.data.len() {
            t.unflatten(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    /// The `(0, 2)` tensor of a bilinear form with Gram matrix `m`.
    pub fn from_bilinear(m: &Matrix) -> Self {
        assert!(m.is_square(), "bilinear form needs a square matrix");
        Self::from_fn(0, 2, m.rows(), |ix| m.get(ix[0], ix[1]).clone())
    }

    pub fn contravariant(&self) -> usize {
        self.contravariant
    }

    pub fn covariant(&self) -> usize {
        self.covariant
    }

    pub fn order(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.order(), "tensor index arity");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "tensor index out of range");
            acc * self.dim + i
        })
    }

    fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        for slot in (0..out.len()).rev() {
            out[slot] = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let flat = self.flatten(idx);
        self.data[flat] = value;
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.data)
    }

    /// Nonzero components in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(flat, v)| {
            let mut idx = vec![0; self.order()];
            self.unflatten(flat, &mut idx);
            (idx, v)
        })
    }

    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Rational)> {
        self.nonzero().next().map(|(i, v)| (i, v.clone()))
    }

    fn same_shape(&self, other: &Tensor) {
        assert_eq!(
            (self.contravariant, self.covariant, self.dim),
            (other.contravariant, other.covariant, other.dim),
            "tensor shape mismatch"
        );
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.same_shape(other);
        Tensor { data: linalg::add(&self.data, &other.data), ..self.clone() }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.same_shape(other);
        Tensor { data: linalg::sub(&self.data, &other.data), ..self.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Tensor {
        Tensor { data: linalg::scale(s, &self.data), ..self.clone() }
    }

    /// Precomposes a covariant slot with `m`:
    /// `T'(.., e_j, ..) = T(.., m e_j, ..) = Σ_k m[k][j] T(.., e_k, ..)`.
    pub fn transform_slot(&self, slot: usize, m: &Matrix) -> Tensor {
        assert!(slot < self.order(), "slot out of range");
        assert_eq!((m.rows(), m.cols()), (self.dim, self.dim), "slot matrix shape");
        let n = self.dim;
        let inner = n.pow((self.order() - 1 - slot) as u32);
        let outer = self.data.len() / (inner * n);
        let mut out = Tensor::zeros(self.contravariant, self.covariant, n);
        for o in 0..outer {
            for k in 0..n {
                let src = (o * n + k) * inner;
                for j in 0..n {
                    let coeff = m.get(k, j);
                    if coeff.is_zero() {
                        continue;
                    }
                    let dst = (o * n + j) * inner;
                    for s in 0..inner {
                        let v = &self.data[src + s];
                        if !v.is_zero() {
                            out.data[dst + s] += coeff * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies `m` to a contravariant slot: `T'^i = Σ_k m[i][k] T^k`.
    pub fn apply_to_slot(&self, slot: usize, m: &Matrix) -> Tensor {
        self.transform_slot(slot, &m.transpose())
    }

    /// Evaluates a covariant tensor on arbitrary vectors.
    pub fn evaluate(&self, args: &[Vec<Rational>]) -> Rational {
        assert_eq!(self.contravariant, 0, "evaluate needs a covariant tensor");
        assert_eq!(args.len(), self.covariant, "argument count");
        let mut t = self.clone();
        for (slot, v) in args.iter().enumerate() {
            let col = Matrix::from_fn(self.dim, self.dim, |k, _| v[k].clone());
            t = t.transform_slot(slot, &col);
        }
        t.data[0].clone()
    }
}

fn require_covariant(alg: &HomLieAlgebra, omega: &Tensor) -> Result<(), TensorError> {
    if omega.contravariant != 0 {
        return Err(TensorError::NotCovariant(omega.contravariant, omega.covariant));
    }
    if omega.dim != alg.dim() {
        return Err(TensorError::Dimension { expected: alg.dim(), found: omega.dim });
    }
    Ok(())
}

/// For each slot `i`, `ω` with every other slot precomposed with `φ`.
fn phi_on_other_slots(phi: &Matrix, omega: &Tensor) -> Vec<Tensor> {
    let q = omega.covariant;
    (0..q)
        .map(|i| {
            (0..q).filter(|&s| s != i).fold(omega.clone(), |t, s| t.transform_slot(s, phi))
        })
        .collect()
}

/// Assembles a `(0, q+1)` tensor whose first slot runs over directions `a`
/// and whose remaining slots are `Σ_i base[i]` with slot `i` precomposed by
/// `slot_map(a)`.
fn assemble(dim: usize, bases: &[Tensor], slot_map: impl Fn(usize) -> Matrix, sign: &Rational) -> Tensor {
    let q = bases.len();
    let mut out = Tensor::zeros(0, q + 1, dim);
    let block = dim.pow(q as u32);
    for a in 0..dim {
        let m = slot_map(a);
        for (i, base) in bases.iter().enumerate() {
            let t = base.transform_slot(i, &m);
            linalg::axpy(&mut out.data[a * block..(a + 1) * block], sign, &t.data);
        }
    }
    out
}

/// Covariant derivative of a `(0, q)` tensor:
/// `(∇_x ω)(y_1..y_q) = -Σ_i ω(φy_1, .., ∇_x y_i, .., φy_q)`,
/// with the direction `x` as the new first slot.
pub fn cov_deriv_0q(alg: &HomLieAlgebra, conn: &Connection, omega: &Tensor) -> Result<Tensor, TensorError> {
    require_covariant(alg, omega)?;
    let bases = phi_on_other_slots(alg.phi(), omega);
    Ok(assemble(alg.dim(), &bases, |a| conn.direction_matrix(a), &-Rational::one()))
}

/// `(∇_{e_i} A)` for each basis direction `i`, where
/// `(∇_x A)y = ∇_x(Ay) - A∇_x y`.
pub fn nabla_endo(conn: &Connection, a: &Endomorphism) -> Vec<Matrix> {
    (0..conn.dim())
        .map(|i| {
            let n = conn.direction_matrix(i);
            n.mul(a).sub(&a.mul(&n))
        })
        .collect()
}

/// Directional version of [`nabla_endo`] along an arbitrary vector.
pub fn nabla_endo_along(derivs: &[Matrix], x: &[Rational]) -> Matrix {
    let n = derivs.len();
    let mut out = Matrix::zeros(n, n);
    for (a, xa) in x.iter().enumerate() {
        if !xa.is_zero() {
            out = out.add(&derivs[a].scale(xa));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurityCheck {
    /// Fail with [`TensorError::NotPure`] when the input is not pure.
    Require,
    /// Compute regardless and mark the result unverified.
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    Verified,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tachibana {
    pub tensor: Tensor,
    pub purity: Purity,
}

/// Tachibana operator of a covariant tensor with respect to `A = φ∘J`:
/// `(Φω)(x, y_1..y_q) = Σ_i ω(φy_1, .., [y_i, Ax] - A[y_i, x], .., φy_q)`.
pub fn tachibana(
    alg: &HomLieAlgebra,
    j: &ComplexStructure,
    omega: &Tensor,
    mode: PurityCheck,
) -> Result<Tachibana, TensorError> {
    require_covariant(alg, omega)?;
    let a = j.composite(alg);
    let purity = match mode {
        PurityCheck::Require => {
            let check = purity_check(omega, &a);
            if !check.passed {
                return Err(TensorError::NotPure(check));
            }
            Purity::Verified
        }
        PurityCheck::Skip => Purity::Unverified,
    };
    let n = alg.dim();
    let bases = phi_on_other_slots(alg.phi(), omega);
    let slot_map = |x: usize| {
        let ax = a.column(x);
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|y| {
                let ey = linalg::basis(n, y);
                let first = alg.bracket(&ey, &ax);
                let second = a.mul_vec(alg.basis_bracket(y, x));
                linalg::sub(&first, &second)
            })
            .collect();
        Matrix::from_columns(&cols)
    };
    let tensor = assemble(n, &bases, slot_map, &Rational::one());
    Ok(Tachibana { tensor, purity })
}

/// Purity of a covariant tensor with respect to `A`: moving `A` between any
/// two adjacent slots leaves the value unchanged.
pub fn purity_check(omega: &Tensor, a: &Endomorphism) -> Check {
    let q = omega.covariant;
    let mut witnesses = Vec::new();
    for s in 0..q.saturating_sub(1) {
        let left = omega.transform_slot(s, a);
        let right = omega.transform_slot(s + 1, a);
        let diff = left.sub(&right);
        for (idx, v) in diff.nonzero() {
            let note = alloc::format!("slots {} and {}", s + 1, s + 2);
            witnesses.push(Witness::scalar(&idx, v.clone()).with_note(note));
        }
    }
    Check::from_witnesses("pure with respect to phi∘J", witnesses)
}
