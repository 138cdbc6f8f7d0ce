//! Dense exact linear algebra over [`Scalar`].
//!
//! Every elimination pivots on the first nonzero entry in row-major order,
//! so results (kernel bases, particular solutions, signatures) are
//! reproducible bit for bit.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::scalar::Scalar;

/// Column vectors are plain coefficient lists.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
}

pub mod vector {
    //! Helpers on [`Vector`](super::Vector).
    use super::*;

    pub fn zeros(n: usize) -> Vector {
        vec![Scalar::zero(); n]
    }

    pub fn unit(n: usize, i: usize) -> Vector {
        let mut v = zeros(n);
        v[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
        debug_assert_eq!(u.len(), v.len());
        u.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
    }

    pub fn add(u: &[Scalar], v: &[Scalar]) -> Vector {
        u.iter().zip(v).map(|(a, b)| a + b).collect()
    }

    pub fn sub(u: &[Scalar], v: &[Scalar]) -> Vector {
        u.iter().zip(v).map(|(a, b)| a - b).collect()
    }

    pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
        v.iter().map(|a| c * a).collect()
    }

    pub fn neg(v: &[Scalar]) -> Vector {
        v.iter().map(|a| -a).collect()
    }

    /// `acc += c * v`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, b) in acc.iter_mut().zip(v) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Linear combination `Σ coeffs[i] * vectors[i]`.
    pub fn combine(n: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
        let mut out = zeros(n);
        for (c, v) in coeffs.iter().zip(vectors) {
            axpy(&mut out, c, v);
        }
        out
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:>6} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction: reduced row echelon form and pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Sylvester inertia of a symmetric bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dimension(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    pub fn is_neutral(&self) -> bool {
        self.zero == 0 && self.plus == self.minus
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| vector::from_ints(r)).collect())
    }

    /// Matrix whose `j`-th column is `columns[j]`; `rows` is needed when there are no columns.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Scalar]) {
        for (r, x) in v.iter().enumerate() {
            self[(r, c)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| vector::dot(&self.data[r * self.cols..(r + 1) * self.cols], v)).collect()
    }

    /// `vᵀ M` as a row, returned as a vector.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector-matrix dimension mismatch");
        let mut out = vector::zeros(self.cols);
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let m = &self[(r, c)];
                if !m.is_zero() {
                    out[c] += x * m;
                }
            }
        }
        out
    }

    /// Bilinear form `uᵀ M v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        vector::dot(u, &self.mul_vec(v))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| c * a).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m[(lead, c)].recip().expect("pivot is nonzero");
            for k in c..m.cols {
                let v = &m[(lead, k)] * &inv;
                m[(lead, k)] = v;
            }
            for r in 0..m.rows {
                if r == lead || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for k in c..m.cols {
                    if m[(lead, k)].is_zero() {
                        continue;
                    }
                    let v = &f * &m[(lead, k)];
                    m[(r, k)] -= v;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vector> {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vector::zeros(self.cols);
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Particular solution of `M x = b` together with a kernel basis, or
    /// `None` when `b` is not in the column space.
    pub fn solve(&self, b: &[Scalar]) -> Option<(Vector, Vec<Vector>)> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| if c < self.cols { self[(r, c)].clone() } else { b[r].clone() });
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vector::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some((x, self.kernel()))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return Err(LinalgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for k in c..n {
                    let v = &f * &m[(c, k)];
                    m[(r, k)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Sylvester signature via symmetric Gaussian congruence.
    pub fn congruence_signature(&self) -> Result<Signature, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sig = Signature { plus: 0, minus: 0, zero: 0 };
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let pivot = match active.iter().copied().find(|&i| !a[(i, i)].is_zero()) {
                Some(i) => i,
                None => {
                    // Zero diagonal: replace e_i by e_i + e_j to create a pivot.
                    let pair = active
                        .iter()
                        .copied()
                        .find_map(|i| active.iter().copied().find(|&j| j != i && !a[(i, j)].is_zero()).map(|j| (i, j)));
                    let Some((i, j)) = pair else {
                        sig.zero += active.len();
                        break;
                    };
                    for k in 0..n {
                        let v = a[(j, k)].clone();
                        a[(i, k)] += v;
                    }
                    for k in 0..n {
                        let v = a[(k, j)].clone();
                        a[(k, i)] += v;
                    }
                    i
                }
            };
            let d = a[(pivot, pivot)].clone();
            if d.is_positive() {
                sig.plus += 1;
            } else {
                sig.minus += 1;
            }
            active.retain(|&k| k != pivot);
            for &r in &active {
                if a[(r, pivot)].is_zero() {
                    continue;
                }
                let f = &a[(r, pivot)] / &d;
                for k in 0..n {
                    let v = &f * &a[(pivot, k)];
                    a[(r, k)] -= v;
                }
                for k in 0..n {
                    let v = &f * &a[(k, pivot)];
                    a[(k, r)] -= v;
                }
            }
        }
        Ok(sig)
    }
}

/// A linear subspace of `Q^n`, stored as a canonical (reduced echelon) basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec());
        let Rref { matrix, pivots } = m.rref();
        let basis = (0..pivots.len()).map(|r| matrix.row(r)).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| vector::unit(ambient, i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if vector::is_zero(v) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let m = Matrix::from_columns(self.ambient, &self.basis);
        m.solve(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.basis.is_empty() {
            return vector::is_zero(v).then(Vec::new);
        }
        let m = Matrix::from_columns(self.ambient, &self.basis);
        m.solve(v).map(|(x, _)| x)
    }
}

/// Columns of `basis` expressed as a matrix; shorthand used for change of basis.
pub fn basis_matrix(ambient: usize, basis: &[Vector]) -> Matrix {
    Matrix::from_columns(ambient, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q};

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        let k = m.kernel();
        assert_eq!(k, vec![vector::from_ints(&[-1, 1])]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = vec![q(1, 2), int(3), int(-1)];
        let (x, k) = Matrix::identity(3).solve(&b).unwrap();
        assert_eq!(x, b);
        assert!(k.is_empty());
        assert!(Matrix::zeros(2, 2).solve(&[int(1), int(0)]).is_none());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.determinant().unwrap(), int(1));
        let s = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular));
        assert_eq!(s.determinant().unwrap(), int(0));
    }

    #[test]
    fn signature_of_example_metric() {
        let g = Matrix::diagonal(&vector::from_ints(&[-1, -1, -1, -1, 1]));
        assert_eq!(g.congruence_signature().unwrap(), Signature { plus: 1, minus: 4, zero: 0 });
    }

    #[test]
    fn signature_of_zero_and_hyperbolic() {
        assert_eq!(Matrix::zeros(2, 2).congruence_signature().unwrap(), Signature { plus: 0, minus: 0, zero: 2 });
        let h = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.congruence_signature().unwrap(), Signature { plus: 1, minus: 1, zero: 0 });
        let bad = Matrix::from_int_rows(&[&[0, 1], &[2, 0]]);
        assert_eq!(bad.congruence_signature(), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, &[vector::from_ints(&[1, 1, 0]), vector::from_ints(&[2, 2, 0])]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&vector::from_ints(&[-3, -3, 0])));
        assert!(!s.contains(&vector::from_ints(&[1, 0, 0])));
        assert_eq!(s.coordinates(&vector::from_ints(&[5, 5, 0])), Some(vec![int(5)]));
    }
}
