//! Lie algebras given by structure constants.
//!
//! Indices are 0-based throughout the API. Error messages print them
//! 1-based, matching the usual `e_1, …, e_n` labelling.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// Largest supported dimension.
pub const MAX_DIM: usize = 16;

/// A triple on which the Jacobi identity fails, with the cyclic sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector,
}

impl fmt::Display for JacobiDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jacobi identity fails on (e{}, e{}, e{}): cyclic sum (", self.i + 1, self.j + 1, self.k + 1)?;
        for (a, x) in self.defect.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension {dim} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge { dim: usize },
    #[error("basis index {} out of range for dimension {dim}", index + 1)]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(JacobiDefect),
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("algebra is not solvable")]
    NotSolvable,
}

/// Structure constants `[e_i, e_j] = Σ_k c^k_ij e_k`, stored for `i < j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Vector>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        for (i, j, k, c) in self.constants() {
            write!(f, ", [e{},e{}]_{}={}", i + 1, j + 1, k + 1, c)?;
        }
        write!(f, ")")
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// The abelian Lie algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Result<Self, LieError> {
        if dim > MAX_DIM {
            return Err(LieError::DimensionTooLarge { dim });
        }
        Ok(LieAlgebra { dim, table: vec![vector::zeros(dim); dim * dim.saturating_sub(1) / 2] })
    }

    /// Builds an algebra from `(i, j, k, c^k_ij)` entries. Entries with
    /// `i > j` are stored antisymmetrically; repeated entries accumulate.
    pub fn from_constants(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self, LieError> {
        let mut l = LieAlgebra::abelian(dim)?;
        for (i, j, k, c) in entries {
            for idx in [*i, *j, *k] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j || c.is_zero() {
                continue;
            }
            let (a, b, s) = if i < j { (*i, *j, c.clone()) } else { (*j, *i, -c) };
            l.table[pair_index(dim, a, b)][*k] += s;
        }
        Ok(l)
    }

    /// Sets `[e_i, e_j] = v` (and `[e_j, e_i] = -v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) -> Result<(), LieError> {
        let n = self.dim;
        if i >= n || j >= n {
            return Err(LieError::IndexOutOfRange { index: i.max(j), dim: n });
        }
        if v.len() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: v.len() });
        }
        if i == j {
            return Ok(());
        }
        if i < j {
            self.table[pair_index(n, i, j)] = v;
        } else {
            self.table[pair_index(n, j, i)] = vector::neg(&v);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.table[pair_index(self.dim, i, j)][k].clone(),
            core::cmp::Ordering::Greater => -&self.table[pair_index(self.dim, j, i)][k],
            core::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    /// Nonzero constants `(i, j, k, c^k_ij)` with `i < j`, in lexicographic order.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.table[pair_index(n, i, j)].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.table[pair_index(self.dim, i, j)].clone(),
            core::cmp::Ordering::Greater => vector::neg(&self.table[pair_index(self.dim, j, i)]),
            core::cmp::Ordering::Equal => vector::zeros(self.dim),
        }
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                if i < j {
                    vector::axpy(&mut out, &c, &self.table[pair_index(n, i, j)]);
                } else {
                    vector::axpy(&mut out, &-c, &self.table[pair_index(n, j, i)]);
                }
            }
        }
        out
    }

    /// `ad(x)`: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &vector::unit(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&vector::unit(self.dim, i))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| vector::is_zero(v))
    }

    /// Checks `Σ_cyc [e_i, [e_j, e_k]] = 0` on all `i < j < k`; reports the first failure.
    pub fn jacobi_check(&self) -> Result<(), JacobiDefect> {
        let n = self.dim;
        let ad: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = ad[i].mul_vec(&self.bracket_basis(j, k));
                    let b = ad[j].mul_vec(&self.bracket_basis(k, i));
                    let c = ad[k].mul_vec(&self.bracket_basis(i, j));
                    let s = vector::add(&vector::add(&a, &b), &c);
                    if !vector::is_zero(&s) {
                        return Err(JacobiDefect { i, j, k, defect: s });
                    }
                }
            }
        }
        Ok(())
    }

    fn require_lie(&self) -> Result<(), LieError> {
        self.jacobi_check().map_err(LieError::NotALieAlgebra)
    }

    /// `span{[s, t] : s ∈ S, t ∈ T}`.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                let v = self.bracket(a, b);
                if !vector::is_zero(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vs)
    }

    /// `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` up to and including the first repeated term.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, LieError> {
        self.require_lie()?;
        let whole = Subspace::whole(self.dim);
        Ok(self.series(|cur| self.bracket_subspaces(&whole, cur)))
    }

    /// `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ …` up to the first repeated term.
    pub fn derived_series(&self) -> Result<Vec<Subspace>, LieError> {
        self.require_lie()?;
        Ok(self.series(|cur| self.bracket_subspaces(cur, cur)))
    }

    fn series(&self, next: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut chain = vec![Subspace::whole(self.dim)];
        loop {
            let cur = chain.last().expect("chain is nonempty");
            let nxt = next(cur);
            if nxt.dim() == cur.dim() {
                return chain;
            }
            chain.push(nxt);
        }
    }

    /// Smallest `s` with `g^{s+1} = 0`, or `None` if not nilpotent.
    pub fn nilpotency_step(&self) -> Result<Option<usize>, LieError> {
        let chain = self.lower_central_series()?;
        let last = chain.last().expect("chain is nonempty");
        Ok(last.is_zero().then(|| chain.len() - 1))
    }

    pub fn is_nilpotent(&self) -> Result<bool, LieError> {
        Ok(self.nilpotency_step()?.is_some())
    }

    pub fn is_solvable(&self) -> Result<bool, LieError> {
        Ok(self.derived_series()?.last().expect("chain is nonempty").is_zero())
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let rows: Vec<Vector> = (0..n).flat_map(|j| self.ad_basis(j).to_rows()).collect();
        if rows.is_empty() {
            return Subspace::whole(n);
        }
        Subspace::span(n, &Matrix::from_rows(rows).kernel())
    }

    pub fn centralizer(&self, x: &[Scalar]) -> Subspace {
        Subspace::span(self.dim, &self.ad(x).kernel())
    }

    /// Centralizer of a subspace: `{y : [s, y] = 0 for all s ∈ S}`.
    pub fn centralizer_of(&self, s: &Subspace) -> Subspace {
        let n = self.dim;
        if s.is_zero() {
            return Subspace::whole(n);
        }
        let rows: Vec<Vector> = s.basis().iter().flat_map(|v| self.ad(v).to_rows()).collect();
        Subspace::span(n, &Matrix::from_rows(rows).kernel())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|a| s.basis().iter().all(|b| s.contains(&self.bracket(a, b))))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let n = self.dim;
        (0..n).all(|i| s.basis().iter().all(|v| s.contains(&self.bracket(&vector::unit(n, i), v))))
    }

    /// `D[x,y] = [Dx,y] + [x,Dy]` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let n = self.dim;
        if d.rows() != n || d.cols() != n {
            return false;
        }
        let cols = d.columns();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let rhs = vector::add(&self.bracket(&cols[i], &vector::unit(n, j)), &self.bracket(&vector::unit(n, i), &cols[j]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of `Der(g)`, as the kernel of `D ↦ D[·,·] − [D·,·] − [·,D·]`.
    pub fn derivation_algebra(&self) -> Vec<Matrix> {
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vector::zeros(n * n);
                    // D[e_i,e_j]_k = Σ_m c^m_ij D_km
                    for m in 0..n {
                        let c = self.structure_constant(i, j, m);
                        if !c.is_zero() {
                            row[k * n + m] += c;
                        }
                    }
                    // [De_i, e_j]_k = Σ_a D_ai c^k_aj
                    for a in 0..n {
                        let c = self.structure_constant(a, j, k);
                        if !c.is_zero() {
                            row[a * n + i] -= c;
                        }
                        // [e_i, De_j]_k = Σ_a D_aj c^k_ia
                        let c = self.structure_constant(i, a, k);
                        if !c.is_zero() {
                            row[a * n + j] -= c;
                        }
                    }
                    if !vector::is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() { (0..n * n).map(|t| vector::unit(n * n, t)).collect() } else { Matrix::from_rows(rows).kernel() };
        kernel.into_iter().map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone())).collect()
    }

    /// The algebra expressed in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: p.cols() });
        }
        let inv = p.inverse().map_err(|_| LieError::LinearlyDependent)?;
        let f = p.columns();
        let mut out = LieAlgebra::abelian(n)?;
        for a in 0..n {
            for b in a + 1..n {
                out.table[pair_index(n, a, b)] = inv.mul_vec(&self.bracket(&f[a], &f[b]));
            }
        }
        Ok(out)
    }

    /// The subalgebra spanned by `basis`, written in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<LieAlgebra, LieError> {
        let m = basis.len();
        let span = Subspace::span(self.dim, basis);
        if span.dim() != m {
            return Err(LieError::LinearlyDependent);
        }
        let p = Matrix::from_columns(self.dim, basis);
        let mut out = LieAlgebra::abelian(m)?;
        for a in 0..m {
            for b in a + 1..m {
                let v = self.bracket(&basis[a], &basis[b]);
                let (coords, _) = p.solve(&v).ok_or(LieError::NotASubalgebra)?;
                out.table[pair_index(m, a, b)] = coords;
            }
        }
        Ok(out)
    }

    /// The quotient by the ideal spanned by `kernel`, realised on the
    /// complement spanned by `complement`: brackets are projected along `kernel`.
    pub fn project(&self, complement: &[Vector], kernel: &[Vector]) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        let m = complement.len();
        if m + kernel.len() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: m + kernel.len() });
        }
        if !self.is_ideal(&Subspace::span(n, kernel)) {
            return Err(LieError::NotAnIdeal);
        }
        let mut all = complement.to_vec();
        all.extend(kernel.iter().cloned());
        let inv = Matrix::from_columns(n, &all).inverse().map_err(|_| LieError::LinearlyDependent)?;
        let mut out = LieAlgebra::abelian(m)?;
        for a in 0..m {
            for b in a + 1..m {
                let coords = inv.mul_vec(&self.bracket(&complement[a], &complement[b]));
                out.table[pair_index(m, a, b)] = coords[..m].to_vec();
            }
        }
        Ok(out)
    }

    /// Unital associative algebra generated by `ad(g)`, as a spanning set of matrices.
    fn ad_envelope(&self) -> Vec<Matrix> {
        let n = self.dim;
        let gens: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).filter(|m| !m.is_zero()).collect();
        let flat = |m: &Matrix| -> Vector { m.entries().to_vec() };
        let mut basis = vec![Matrix::identity(n)];
        let mut span = Subspace::span(n * n, &[flat(&basis[0])]);
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for g in &gens {
                    let p = g.mul(a);
                    let v = flat(&p);
                    if !span.contains(&v) {
                        span = span.sum(&Subspace::span(n * n, &[v]));
                        basis.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        basis
    }

    /// Nilradical of a solvable algebra: the elements `x` with `ad x` in the
    /// radical of the associative envelope of `ad(g)`, i.e.
    /// `tr(ad x · P) = 0` for every `P` in that envelope.
    pub fn nilradical(&self) -> Result<Subspace, LieError> {
        if !self.is_solvable()? {
            return Err(LieError::NotSolvable);
        }
        let n = self.dim;
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let rows: Vec<Vector> = self.ad_envelope().iter().map(|p| ads.iter().map(|a| a.mul(p).trace()).collect()).collect();
        Ok(Subspace::span(n, &Matrix::from_rows(rows).kernel()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    /// Heisenberg: [e1,e2] = e3.
    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(0, 1, 2, int(1))]).unwrap()
    }

    /// The `ex4.3` algebra, hand-entered: c^k_ij = -(coefficient of e^{ij} in de^k).
    pub(crate) fn ex43() -> LieAlgebra {
        let de: &[(usize, usize, usize, i64)] = &[
            (1, 0, 1, -2),
            (1, 2, 3, -2),
            (2, 3, 4, -3),
            (2, 0, 2, -1),
            (2, 1, 3, 3),
            (3, 2, 4, 3),
            (3, 1, 2, -3),
            (3, 0, 3, -1),
            (4, 0, 1, 2),
            (4, 2, 3, 2),
        ];
        let entries: Vec<_> = de.iter().map(|&(k, i, j, a)| (i, j, k, int(-a))).collect();
        LieAlgebra::from_constants(5, &entries).unwrap()
    }

    #[test]
    fn abelian_is_lie_and_nilpotent_step_one() {
        let a = LieAlgebra::abelian(3).unwrap();
        assert!(a.jacobi_check().is_ok());
        assert_eq!(a.nilpotency_step().unwrap(), Some(1));
        assert_eq!(a.center().dim(), 3);
        assert_eq!(a.derivation_algebra().len(), 9);
    }

    #[test]
    fn heisenberg_center_and_step() {
        let h = heisenberg();
        assert_eq!(h.center(), Subspace::span(3, &[vector::unit(3, 2)]));
        assert_eq!(h.nilpotency_step().unwrap(), Some(2));
        assert_eq!(h.nilradical().unwrap().dim(), 3);
    }

    #[test]
    fn ex43_is_solvable_not_nilpotent() {
        let l = ex43();
        assert!(l.jacobi_check().is_ok());
        assert!(l.is_solvable().unwrap());
        assert!(!l.is_nilpotent().unwrap());
        let n = l.nilradical().unwrap();
        assert_eq!(n.dim(), 3);
        assert!(n.contains(&vector::from_ints(&[0, 1, 0, 0, -1])));
    }

    #[test]
    fn perturbed_ex43_fails_jacobi() {
        let mut l = ex43();
        let mut v = l.bracket_basis(0, 1);
        v[1] += int(1);
        l.set_bracket(0, 1, v).unwrap();
        let err = l.jacobi_check().unwrap_err();
        assert!(!vector::is_zero(&err.defect));
        assert!(matches!(l.is_nilpotent(), Err(LieError::NotALieAlgebra(_))));
    }

    #[test]
    fn ad_is_derivation() {
        let l = ex43();
        for i in 0..5 {
            assert!(l.is_derivation(&l.ad_basis(i)));
        }
        let der = l.derivation_algebra();
        assert!(der.iter().all(|d| l.is_derivation(d)));
    }

    #[test]
    fn restrict_and_project() {
        let h = heisenberg();
        let sub = h.restrict(&[vector::unit(3, 0), vector::unit(3, 2)]).unwrap();
        assert!(sub.is_abelian());
        assert_eq!(h.restrict(&[vector::unit(3, 0), vector::unit(3, 1)]), Err(LieError::NotASubalgebra));
        let q = h.project(&[vector::unit(3, 0), vector::unit(3, 1)], &[vector::unit(3, 2)]).unwrap();
        assert!(q.is_abelian());
    }
}
