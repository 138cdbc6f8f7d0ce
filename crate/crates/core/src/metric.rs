//! Metric Lie algebras, the Levi-Civita connection and curvature.

use alloc::vec::Vec;

use crate::forms::Form;
use crate::lie::LieAlgebra;
use crate::linalg::{vector, LinalgError, Matrix, Signature, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("connection postcondition failed: {0}")]
    ConnectionPostcondition(&'static str),
    #[error("covariant derivative of a 2-form disagrees with its three-term decomposition")]
    DecompositionMismatch,
}

/// A Lie algebra with a nondegenerate symmetric bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    g: Matrix,
    g_inv: Matrix,
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, g: Matrix) -> Result<Self, MetricError> {
        let n = algebra.dim();
        if g.rows() != n || g.cols() != n {
            return Err(MetricError::DimensionMismatch { expected: n, found: g.rows() });
        }
        if !g.is_symmetric() {
            return Err(MetricError::NotSymmetric);
        }
        let g_inv = g.inverse().map_err(|_| MetricError::DegenerateMetric)?;
        Ok(MetricLieAlgebra { algebra, g, g_inv })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &Matrix {
        &self.g
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn signature(&self) -> Signature {
        match self.g.congruence_signature() {
            Ok(s) => s,
            Err(LinalgError::NotSymmetric) => unreachable!("metric symmetric by construction"),
            Err(e) => panic!("{e}"),
        }
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.g.bilinear(u, v)
    }

    /// `v♭ = g(v, ·)`.
    pub fn flat(&self, v: &[Scalar]) -> Vector {
        self.g.mul_vec(v)
    }

    /// `α♯`, defined by `g(α♯, ·) = α`.
    pub fn sharp(&self, alpha: &[Scalar]) -> Vector {
        self.g_inv.mul_vec(alpha)
    }

    pub fn flat_form(&self, v: &[Scalar]) -> Form {
        Form::from_covector(&self.flat(v))
    }

    /// Metric adjoint `f* = g⁻¹ fᵀ g`, so that `g(f*u, v) = g(u, f v)`.
    pub fn adjoint(&self, f: &Matrix) -> Matrix {
        self.g_inv.mul(&f.transpose()).mul(&self.g)
    }

    /// `(ad w)*`.
    pub fn ad_star(&self, w: &[Scalar]) -> Matrix {
        self.adjoint(&self.algebra.ad(w))
    }

    /// `(fˢ, fᵃ) = (½(f + f*), ½(f − f*))`.
    pub fn sym_anti_split(&self, f: &Matrix) -> (Matrix, Matrix) {
        let half = Scalar::new(1, 2);
        let fs = self.adjoint(f);
        (f.add(&fs).scale(&half), f.sub(&fs).scale(&half))
    }

    pub fn is_metric_symmetric(&self, f: &Matrix) -> bool {
        self.g.mul(f) == self.g.mul(f).transpose()
    }

    pub fn is_metric_antisymmetric(&self, f: &Matrix) -> bool {
        self.g.mul(f) == self.g.mul(f).transpose().neg()
    }

    /// Lie derivative `L_x α = (ad x)·α`, e.g. `L_x η(u) = −η([x, u])`.
    pub fn lie_derivative(&self, x: &[Scalar], alpha: &Form) -> Form {
        alpha.act(&self.algebra.ad(x))
    }

    /// Same Lie algebra, metric multiplied by `c`.
    pub fn scale_metric(&self, c: &Scalar) -> Result<MetricLieAlgebra, MetricError> {
        MetricLieAlgebra::new(self.algebra.clone(), self.g.scale(c))
    }
}

/// Left-invariant connection: `nabla[i]` is the matrix of `∇_{e_i}`, so
/// `Γ^k_ij = nabla[i][(k, j)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    nabla: Vec<Matrix>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.nabla.len()
    }

    /// `Γ^k_ij`, the `e_k` component of `∇_{e_i} e_j`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.nabla[i][(k, j)].clone()
    }

    pub fn nabla_basis(&self, i: usize) -> &Matrix {
        &self.nabla[i]
    }

    /// Matrix of `∇_x`.
    pub fn nabla(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.nabla[i].scale(c));
            }
        }
        out
    }

    /// `∇_x v`.
    pub fn covariant(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        self.nabla(x).mul_vec(v)
    }

    pub fn is_metric_compatible(&self, m: &MetricLieAlgebra) -> bool {
        self.nabla.iter().all(|nb| m.is_metric_antisymmetric(nb))
    }

    pub fn is_torsion_free(&self, l: &LieAlgebra) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let t = vector::sub(&self.nabla[i].column(j), &self.nabla[j].column(i));
                t == l.bracket_basis(i, j)
            })
        })
    }
}

/// `∇_w v = −ad(v)ˢ w − ½ (ad w)* v`; both postconditions are verified.
pub fn levi_civita(m: &MetricLieAlgebra) -> Result<Connection, MetricError> {
    let n = m.dim();
    let half = Scalar::new(1, 2);
    let l = m.algebra();
    let ad_sym: Vec<Matrix> = (0..n).map(|j| m.sym_anti_split(&l.ad_basis(j)).0).collect();
    let ad_star: Vec<Matrix> = (0..n).map(|i| m.adjoint(&l.ad_basis(i))).collect();
    let nabla = (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n)
                .map(|j| {
                    let a = ad_sym[j].column(i);
                    let b = ad_star[i].column(j);
                    a.iter().zip(&b).map(|(x, y)| -(x + &(&half * y))).collect()
                })
                .collect();
            Matrix::from_columns(n, &cols)
        })
        .collect();
    let c = Connection { nabla };
    if !c.is_metric_compatible(m) {
        return Err(MetricError::ConnectionPostcondition("metric compatibility"));
    }
    if !c.is_torsion_free(l) {
        return Err(MetricError::ConnectionPostcondition("torsion-free"));
    }
    Ok(c)
}

/// Riemann tensor as matrices `R(e_i, e_j)` and the Ricci tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureData {
    n: usize,
    r: Vec<Matrix>,
    ric: Matrix,
    ric_contracted: Matrix,
}

/// `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`, `ric(X,Y) = tr(Z ↦ R(Z,X)Y)`.
pub fn curvature(m: &MetricLieAlgebra, c: &Connection) -> CurvatureData {
    let n = m.dim();
    let l = m.algebra();
    let mut r = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut rij = c.nabla_basis(i).commutator(c.nabla_basis(j));
            let br = l.bracket_basis(i, j);
            if !vector::is_zero(&br) {
                rij = rij.sub(&c.nabla(&br));
            }
            r.push(rij);
        }
    }
    let ric = Matrix::from_fn(n, n, |x, y| (0..n).map(|a| r[a * n + x][(a, y)].clone()).sum());
    // Second route: ric(X,Y) = Σ g^{ab} Rm(Y, e_b, e_a, X), with Rm(X,Y,Z,W) = g(R(X,Y)Z, W).
    let g = m.metric();
    let gi = m.metric_inverse();
    let ric_contracted = Matrix::from_fn(n, n, |x, y| {
        let mut s = Scalar::zero();
        for a in 0..n {
            for b in 0..n {
                if gi[(a, b)].is_zero() {
                    continue;
                }
                let v = r[y * n + b].column(a);
                let rm = vector::dot(&g.row(x), &v);
                if !rm.is_zero() {
                    s += &gi[(a, b)] * &rm;
                }
            }
        }
        s
    });
    CurvatureData { n, r, ric, ric_contracted }
}

impl CurvatureData {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Matrix of `R(e_i, e_j)`.
    pub fn r(&self, i: usize, j: usize) -> &Matrix {
        &self.r[i * self.n + j]
    }

    /// `R(x, y) z`.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let n = self.n;
        let mut out = vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let v = self.r(i, j).mul_vec(z);
                vector::axpy(&mut out, &(&x[i] * &y[j]), &v);
            }
        }
        out
    }

    pub fn ricci(&self) -> &Matrix {
        &self.ric
    }

    /// Ricci tensor computed through the metric contraction of the (0,4) tensor.
    pub fn ricci_contracted(&self) -> &Matrix {
        &self.ric_contracted
    }

    pub fn ricci_routes_agree(&self) -> bool {
        self.ric == self.ric_contracted
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| *self.r(i, j) == self.r(j, i).neg()))
    }

    /// `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0` on basis triples.
    pub fn first_bianchi(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.r(i, j).column(k);
                    let b = self.r(j, k).column(i);
                    let c = self.r(k, i).column(j);
                    if !vector::is_zero(&vector::add(&vector::add(&a, &b), &c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_flat(&self) -> bool {
        self.r.iter().all(Matrix::is_zero)
    }

    /// `ric = c · g`?
    pub fn is_einstein_with(&self, m: &MetricLieAlgebra, c: &Scalar) -> bool {
        self.ric == m.metric().scale(c)
    }
}

/// `∇_x Φ` by direct expansion `−Φ(∇_x ·, ·) − Φ(·, ∇_x ·)`.
pub fn nabla_two_form_direct(c: &Connection, phi: &Form, x: &[Scalar]) -> Form {
    phi.act(&c.nabla(x))
}

/// `½ L_x Φ − ½ (ad x)*Φ + ½ α^Φ_x`, with
/// `α^Φ_x(u, w) = Φ((ad u)* x, w) − Φ((ad w)* x, u)`.
pub fn nabla_two_form_decomposed(m: &MetricLieAlgebra, phi: &Form, x: &[Scalar]) -> Form {
    let n = m.dim();
    let half = Scalar::new(1, 2);
    let lx = m.lie_derivative(x, phi);
    let adx_star = phi.act(&m.ad_star(x));
    let shifted: Vec<Vector> = (0..n).map(|u| m.ad_star(&vector::unit(n, u)).mul_vec(x)).collect();
    let mut alpha = Form::zero(n, 2);
    for u in 0..n {
        for w in u + 1..n {
            let a = phi.eval(&[shifted[u].clone(), vector::unit(n, w)]);
            let b = phi.eval(&[shifted[w].clone(), vector::unit(n, u)]);
            alpha.add_term(&[u, w], a - b);
        }
    }
    lx.sub(&adx_star).add(&alpha).scale(&half)
}

/// `∇_x Φ`, cross-checked against the three-term decomposition.
pub fn nabla_two_form(m: &MetricLieAlgebra, c: &Connection, phi: &Form, x: &[Scalar]) -> Result<Form, MetricError> {
    let direct = nabla_two_form_direct(c, phi, x);
    if direct != nabla_two_form_decomposed(m, phi, x) {
        return Err(MetricError::DecompositionMismatch);
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salamon::{parse_salamon, Bindings};
    use crate::scalar::int;

    fn ex43() -> MetricLieAlgebra {
        let l =
            parse_salamon("(0,−2e^{12}−2e^{34},−3e^{45}−e^{13}+3e^{24},3e^{35}−3e^{23}−e^{14},2e^{12}+2e^{34})", &Bindings::new()).unwrap();
        MetricLieAlgebra::new(l, Matrix::diagonal(&vector::from_ints(&[-1, -1, -1, -1, 1]))).unwrap()
    }

    #[test]
    fn degenerate_metric_rejected() {
        let l = LieAlgebra::abelian(2).unwrap();
        assert_eq!(MetricLieAlgebra::new(l, Matrix::zeros(2, 2)), Err(MetricError::DegenerateMetric));
    }

    #[test]
    fn euclidean_ad_star_is_transpose() {
        let l = LieAlgebra::from_constants(3, &[(0, 1, 2, int(1))]).unwrap();
        let m = MetricLieAlgebra::new(l.clone(), Matrix::identity(3)).unwrap();
        for i in 0..3 {
            assert_eq!(m.ad_star(&vector::unit(3, i)), l.ad_basis(i).transpose());
        }
    }

    #[test]
    fn abelian_is_flat() {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(3).unwrap(), Matrix::identity(3)).unwrap();
        let c = levi_civita(&m).unwrap();
        assert!((0..3).all(|i| c.nabla_basis(i).is_zero()));
        let r = curvature(&m, &c);
        assert!(r.is_flat());
        assert!(r.ricci().is_zero());
    }

    #[test]
    fn ex43_is_einstein() {
        let m = ex43();
        let c = levi_civita(&m).unwrap();
        let r = curvature(&m, &c);
        assert!(r.is_einstein_with(&m, &int(4)));
        assert!(r.ricci_routes_agree());
        assert!(r.first_bianchi());
        assert!(r.is_antisymmetric());
    }

    #[test]
    fn ex43_adjoint_defining_equation() {
        let m = ex43();
        let w = vector::unit(5, 0);
        let s = m.ad_star(&w);
        for u in 0..5 {
            for v in 0..5 {
                let (eu, ev) = (vector::unit(5, u), vector::unit(5, v));
                assert_eq!(m.inner(&s.mul_vec(&eu), &ev), m.inner(&eu, &m.algebra().bracket(&w, &ev)));
            }
        }
    }

    #[test]
    fn nabla_phi_decomposition() {
        let m = ex43();
        let c = levi_civita(&m).unwrap();
        let phi = Form::basis(5, &[0, 1]).add(&Form::basis(5, &[2, 3]));
        for i in 0..5 {
            nabla_two_form(&m, &c, &phi, &vector::unit(5, i)).unwrap();
        }
    }
}
