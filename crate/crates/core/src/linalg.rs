//! Dense rational matrices and vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::Rational;

/// Column vector of coordinates in the standard basis.
pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// The basis vector `e_i` (0-based) of an `n`-dimensional space.
pub fn basis(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

pub fn neg(v: &[Rational]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has length {found}, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ShapeError> {
        let cols = rows.first().ok_or(ShapeError::Empty)?.len();
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ShapeError::Ragged { row, expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Small-integer convenience constructor; panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .expect("rectangular rows")
    }

    /// Matrix whose column `j` is `columns[j]`.
    pub fn from_columns(columns: &[Vector]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols, |i, j| columns[j][i].clone())
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add(&self.data, &rhs.data) }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub(&self.data, &rhs.data) }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale(s, &self.data) }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: neg(&self.data) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut a = self.to_rows();
        let mut prev = Rational::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// LU factorization with row pivoting, or `None` if singular.
    #[allow(clippy::needless_range_loop)]
    pub fn lu(&self) -> Option<Lu> {
        assert!(self.is_square(), "LU of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, p);
            perm.swap(k, p);
            let pivot = a[k][k].clone();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k + 1..n {
                    if !a[k][j].is_zero() {
                        let v = &factor * &a[k][j];
                        a[i][j] -= v;
                    }
                }
                a[i][k] = factor;
            }
        }
        Some(Lu { n, lu: a, perm })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let lu = self.lu()?;
        let cols: Vec<Vector> = (0..self.rows).map(|j| lu.solve(&basis(self.rows, j))).collect();
        Some(Matrix::from_columns(&cols))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Packed `PA = LU` factorization; reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<Vec<Rational>>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn solve(&self, b: &[Rational]) -> Vector {
        assert_eq!(b.len(), self.n, "right-hand side length");
        let n = self.n;
        let mut y: Vector = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for k in 0..i {
                if !self.lu[i][k].is_zero() && !y[k].is_zero() {
                    let v = &self.lu[i][k] * &y[k];
                    y[i] -= v;
                }
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                if !self.lu[i][k].is_zero() && !y[k].is_zero() {
                    let v = &self.lu[i][k] * &y[k];
                    y[i] -= v;
                }
            }
            y[i] = &y[i] / &self.lu[i][i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(Matrix::identity(4).determinant(), q(1));
        assert_eq!(Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
        assert_eq!(Matrix::from_i64_rows(&[&[2, 3], &[4, 6]]).determinant(), q(0));
        let m = Matrix::from_i64_rows(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        // cofactor expansion by hand: 0*(0-4) - 2*(0-4) + 1*(3-0) = 11
        assert_eq!(m.determinant(), q(11));
    }

    #[test]
    fn lu_solves_with_pivoting() {
        let m = Matrix::from_i64_rows(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        let lu = m.lu().unwrap();
        let x = vec![q(1), Rational::ratio(-1, 2), q(3)];
        let b = m.mul_vec(&x);
        assert_eq!(lu.solve(&b), x);
        assert!(Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).lu().is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64_rows(&[&[1, 2, 3, 4], &[2, 1, -4, -3], &[3, -4, -1, 2], &[4, -3, 2, -1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn columns_and_transpose() {
        let m = Matrix::from_columns(&[vec![q(1), q(2)], vec![q(3), q(4)]]);
        assert_eq!(m, Matrix::from_i64_rows(&[&[1, 3], &[2, 4]]));
        assert_eq!(m.transpose().column(0), vec![q(1), q(3)]);
        assert!(Matrix::from_i64_rows(&[&[1, 5], &[5, 2]]).is_symmetric());
        assert!(!m.is_symmetric());
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(1)]]).unwrap_err();
        assert_eq!(err, ShapeError::Ragged { row: 1, expected: 2, found: 1 });
    }
}
