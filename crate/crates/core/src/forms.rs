//! Exterior forms on a Lie algebra and the Chevalley–Eilenberg differential.
//!
//! Conventions: `e^{ij}(e_i, e_j) = 1` (determinant convention, no factorial
//! factors) and `dα(X, Y) = −α([X, Y])` on 1-forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::lie::LieAlgebra;
use crate::linalg::{vector, Matrix, Vector};
use crate::scalar::Scalar;

/// A `degree`-form on `Q^dim`, stored sparsely over strictly increasing multi-indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Scalar>,
}

/// All strictly increasing multi-indices of length `k` in `0..n`, in lexicographic order.
pub fn multi_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Sorts `idx` in place; returns the permutation sign, or 0 on a repeated index.
fn sort_with_sign(idx: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form { dim, degree, comps: BTreeMap::new() }
    }

    /// The constant 0-form `c`.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = Form::zero(dim, 0);
        f.add_term(&[], c);
        f
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` for arbitrary (not necessarily sorted) indices.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut f = Form::zero(dim, indices.len());
        f.add_term(indices, Scalar::one());
        f
    }

    /// The 1-form with the given coefficients.
    pub fn from_covector(coeffs: &[Scalar]) -> Self {
        let mut f = Form::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(&[i], c.clone());
        }
        f
    }

    /// The 2-form with `α(e_i, e_j) = m[(i, j)]`; `m` must be antisymmetric.
    pub fn from_antisymmetric(m: &Matrix) -> Option<Self> {
        let n = m.rows();
        if !m.is_square() {
            return None;
        }
        let mut f = Form::zero(n, 2);
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return None;
            }
            for j in i + 1..n {
                if m[(i, j)] != -&m[(j, i)] {
                    return None;
                }
                f.add_term(&[i, j], m[(i, j)].clone());
            }
        }
        Some(f)
    }

    /// Adds `c · e^{indices}`; indices may be unsorted.
    pub fn add_term(&mut self, indices: &[usize], c: Scalar) {
        assert_eq!(indices.len(), self.degree, "term degree does not match form degree");
        assert!(indices.iter().all(|&i| i < self.dim), "form index out of range");
        if c.is_zero() {
            return;
        }
        let mut idx = indices.to_vec();
        let s = sort_with_sign(&mut idx);
        if s == 0 {
            return;
        }
        let c = if s < 0 { -c } else { c };
        let e = self.comps.entry(idx.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.comps.remove(&idx);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient of `e^I` for a strictly increasing `I`.
    pub fn coefficient(&self, indices: &[usize]) -> Scalar {
        self.comps.get(indices).cloned().unwrap_or_default()
    }

    /// Nonzero components in lexicographic order of the multi-index.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficients of a 1-form.
    pub fn to_covector(&self) -> Vector {
        assert_eq!(self.degree, 1, "not a 1-form");
        (0..self.dim).map(|i| self.coefficient(&[i])).collect()
    }

    /// Matrix `α(e_i, e_j)` of a 2-form.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 2, "not a 2-form");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (k, c) in &self.comps {
            m[(k[0], k[1])] = c.clone();
            m[(k[1], k[0])] = -c;
        }
        m
    }

    pub fn add(&self, other: &Form) -> Form {
        self.check_compatible(other);
        let mut out = self.clone();
        for (k, c) in &other.comps {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.dim, self.degree);
        }
        Form { dim: self.dim, degree: self.degree, comps: self.comps.iter().map(|(k, v)| (k.clone(), c * v)).collect() }
    }

    pub fn neg(&self) -> Form {
        self.scale(&-Scalar::one())
    }

    fn check_compatible(&self, other: &Form) {
        assert_eq!(self.dim, other.dim, "forms live on different spaces");
        assert_eq!(self.degree, other.degree, "forms have different degrees");
    }

    /// `α(v_1, …, v_k)`.
    pub fn eval(&self, vectors: &[Vector]) -> Scalar {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let k = self.degree;
        let mut total = Scalar::zero();
        for (idx, c) in &self.comps {
            let m = Matrix::from_fn(k, k, |a, b| vectors[b][idx[a]].clone());
            let det = if k == 0 { Scalar::one() } else { m.determinant().expect("square") };
            if !det.is_zero() {
                total += c * &det;
            }
        }
        total
    }

    /// `α(e_{i_1}, …, e_{i_k})` for arbitrary basis indices.
    pub fn eval_basis(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            0 => Scalar::zero(),
            1 => self.coefficient(&idx),
            _ => -self.coefficient(&idx),
        }
    }

    /// `(α ∧ β)(X, Y) = α(X)β(Y) − α(Y)β(X)` on 1-forms, extended associatively.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "forms live on different spaces");
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.comps {
            for (b, y) in &other.comps {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(&idx, x * y);
            }
        }
        out
    }

    /// `v ⌟ α = α(v, ·, …)`.
    pub fn interior(&self, v: &[Scalar]) -> Form {
        assert!(self.degree > 0, "interior product of a 0-form");
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.comps {
            for (pos, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let s = if pos % 2 == 0 { c * &v[i] } else { -(c * &v[i]) };
                out.add_term(&rest, s);
            }
        }
        out
    }

    /// Natural action of an endomorphism: `(f·α)(X_1, …) = −Σ_a α(…, f X_a, …)`.
    pub fn act(&self, f: &Matrix) -> Form {
        let n = self.dim;
        let k = self.degree;
        let mut out = Form::zero(n, k);
        if k == 0 {
            return out;
        }
        let fcols = f.columns();
        for idx in multi_indices(n, k) {
            let mut total = Scalar::zero();
            for a in 0..k {
                let args: Vec<Vector> =
                    idx.iter().enumerate().map(|(b, &i)| if a == b { fcols[i].clone() } else { vector::unit(n, i) }).collect();
                total -= self.eval(&args);
            }
            out.add_term(&idx, total);
        }
        out
    }

    /// Pullback along a linear map `p: Q^m → Q^n` (columns are images of `e_i`).
    pub fn pullback(&self, p: &Matrix) -> Form {
        assert_eq!(p.rows(), self.dim, "pullback dimension mismatch");
        let m = p.cols();
        let cols = p.columns();
        let mut out = Form::zero(m, self.degree);
        for idx in multi_indices(m, self.degree) {
            let args: Vec<Vector> = idx.iter().map(|&i| cols[i].clone()).collect();
            out.add_term(&idx, self.eval(&args));
        }
        out
    }
}

/// Chevalley–Eilenberg differential:
/// `dα(X_0, …, X_k) = Σ_{a<b} (−1)^{a+b} α([X_a, X_b], X_0, …, X̂_a, …, X̂_b, …)`.
pub fn ce_d(l: &LieAlgebra, alpha: &Form) -> Form {
    let n = l.dim();
    assert_eq!(alpha.dim(), n, "form and algebra dimensions differ");
    let k = alpha.degree();
    let mut out = Form::zero(n, k + 1);
    if alpha.is_zero() {
        return out;
    }
    for idx in multi_indices(n, k + 1) {
        let mut total = Scalar::zero();
        for a in 0..=k {
            for b in a + 1..=k {
                let br = l.bracket_basis(idx[a], idx[b]);
                if vector::is_zero(&br) {
                    continue;
                }
                let mut args = Vec::with_capacity(k);
                args.push(br);
                for (c, &i) in idx.iter().enumerate() {
                    if c != a && c != b {
                        args.push(vector::unit(n, i));
                    }
                }
                let v = alpha.eval(&args);
                if (a + b) % 2 == 0 {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
        out.add_term(&idx, total);
    }
    out
}

impl fmt::Display for Form {
    /// `2e^{12}−e^{34}` style with 1-based indices; `e^{1,10}` when any index exceeds 9.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let wide = self.dim > 9;
        for (n, (idx, c)) in self.comps.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "\u{2212}")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            if idx.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "e^{{")?;
            for (p, i) in idx.iter().enumerate() {
                if wide && p > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; {}]", self.degree, self)
    }
}
