//! Almost contact metric structures and Sasaki verification (with `ε = +1`).

use alloc::vec::Vec;
use core::fmt;

use crate::forms::{ce_d, Form};
use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::metric::{curvature, levi_civita, Connection, CurvatureData, MetricError, MetricLieAlgebra};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContactError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the two Sasaki characterizations disagree (definition: {definition}, nabla-phi: {nabla_phi})")]
    CharacterizationMismatch { definition: bool, nabla_phi: bool },
    #[error("D-homothety parameter must be positive")]
    NonPositiveParameter,
    #[error("invalid block for sign reversal: {0}")]
    InvalidBlock(&'static str),
}

/// The first almost contact metric identity that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcmsFailure {
    /// `η(ξ) ≠ 1`
    EtaOfXi,
    /// `φ² ≠ −id + η⊗ξ`
    PhiSquared,
    /// `η∘φ ≠ 0`
    EtaPhi,
    /// `g(ξ, ξ) ≠ 1`
    XiNotUnit,
    /// `η ≠ ξ♭`
    EtaNotFlatXi,
    /// `g(φX, φY) ≠ g(X, Y) − η(X)η(Y)`
    Compatibility,
    /// `φ` is not metric-antisymmetric
    PhiNotAntisymmetric,
}

impl fmt::Display for AcmsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AcmsFailure::EtaOfXi => "eta(xi) = 1",
            AcmsFailure::PhiSquared => "phi^2 = -id + eta (x) xi",
            AcmsFailure::EtaPhi => "eta o phi = 0",
            AcmsFailure::XiNotUnit => "g(xi, xi) = 1",
            AcmsFailure::EtaNotFlatXi => "eta = xi^flat",
            AcmsFailure::Compatibility => "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
            AcmsFailure::PhiNotAntisymmetric => "phi metric-antisymmetric",
        })
    }
}

/// `(φ, ξ, η)` on a metric Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostContactData {
    metric: MetricLieAlgebra,
    phi: Matrix,
    xi: Vector,
    eta: Vector,
}

impl AlmostContactData {
    pub fn new(metric: MetricLieAlgebra, phi: Matrix, xi: Vector, eta: Vector) -> Result<Self, ContactError> {
        let n = metric.dim();
        for len in [phi.rows(), phi.cols(), xi.len(), eta.len()] {
            if len != n {
                return Err(ContactError::DimensionMismatch { expected: n, found: len });
            }
        }
        Ok(AlmostContactData { metric, phi, xi, eta })
    }

    /// `η = ξ♭` and `φ` determined by `Φ(X, Y) = g(X, φY)`.
    pub fn from_fundamental_form(metric: MetricLieAlgebra, xi: Vector, phi_form: &Form) -> Result<Self, ContactError> {
        let n = metric.dim();
        if phi_form.dim() != n || phi_form.degree() != 2 {
            return Err(ContactError::DimensionMismatch { expected: n, found: phi_form.dim() });
        }
        let phi = metric.metric_inverse().mul(&phi_form.to_matrix());
        let eta = metric.flat(&xi);
        AlmostContactData::new(metric, phi, xi, eta)
    }

    /// `η = ξ♭`, `φ = −∇ξ`; the structure a Sasaki Reeb field forces.
    pub fn from_reeb(metric: MetricLieAlgebra, xi: Vector) -> Result<Self, ContactError> {
        let n = metric.dim();
        if xi.len() != n {
            return Err(ContactError::DimensionMismatch { expected: n, found: xi.len() });
        }
        let c = levi_civita(&metric)?;
        let cols: Vec<Vector> = (0..n).map(|i| vector::neg(&c.nabla_basis(i).mul_vec(&xi))).collect();
        let phi = Matrix::from_columns(n, &cols);
        let eta = metric.flat(&xi);
        AlmostContactData::new(metric, phi, xi, eta)
    }

    pub fn metric(&self) -> &MetricLieAlgebra {
        &self.metric
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn eta(&self) -> &Vector {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn with_phi(&self, phi: Matrix) -> Self {
        AlmostContactData { phi, ..self.clone() }
    }

    pub fn with_xi(&self, xi: Vector, eta: Vector) -> Self {
        AlmostContactData { xi, eta, ..self.clone() }
    }

    fn eta_tensor_xi(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| &self.xi[r] * &self.eta[c])
    }
}

/// Checks every almost contact metric identity; returns the first failure.
pub fn check_acms(a: &AlmostContactData) -> Result<(), AcmsFailure> {
    let n = a.dim();
    let g = a.metric.metric();
    if vector::dot(&a.eta, &a.xi) != Scalar::one() {
        return Err(AcmsFailure::EtaOfXi);
    }
    let target = Matrix::identity(n).neg().add(&a.eta_tensor_xi());
    if a.phi.mul(&a.phi) != target {
        return Err(AcmsFailure::PhiSquared);
    }
    if !vector::is_zero(&a.phi.vec_mul(&a.eta)) {
        return Err(AcmsFailure::EtaPhi);
    }
    if g.bilinear(&a.xi, &a.xi) != Scalar::one() {
        return Err(AcmsFailure::XiNotUnit);
    }
    if a.metric.flat(&a.xi) != a.eta {
        return Err(AcmsFailure::EtaNotFlatXi);
    }
    let lhs = a.phi.transpose().mul(g).mul(&a.phi);
    let rhs = g.sub(&Matrix::from_fn(n, n, |r, c| &a.eta[r] * &a.eta[c]));
    if lhs != rhs {
        return Err(AcmsFailure::Compatibility);
    }
    if !a.metric.is_metric_antisymmetric(&a.phi) {
        return Err(AcmsFailure::PhiNotAntisymmetric);
    }
    Ok(())
}

/// `Φ = g(·, φ·)`; components are read from `i < j` entries of `gφ`.
pub fn fundamental_form(a: &AlmostContactData) -> Form {
    let n = a.dim();
    let m = a.metric.metric().mul(&a.phi);
    let mut f = Form::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            f.add_term(&[i, j], m[(i, j)].clone());
        }
    }
    f
}

/// `N_φ(e_i, e_j)` for all ordered pairs, indexed `i * n + j`.
pub fn nijenhuis(a: &AlmostContactData) -> Vec<Vector> {
    let n = a.dim();
    let l = a.metric.algebra();
    let phi2 = a.phi.mul(&a.phi);
    let pcols = a.phi.columns();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (vector::unit(n, i), vector::unit(n, j));
            let mut v = phi2.mul_vec(&l.bracket_basis(i, j));
            v = vector::add(&v, &l.bracket(&pcols[i], &pcols[j]));
            v = vector::sub(&v, &a.phi.mul_vec(&l.bracket(&pcols[i], &ej)));
            v = vector::sub(&v, &a.phi.mul_vec(&l.bracket(&ei, &pcols[j])));
            out.push(v);
        }
    }
    out
}

/// `N_φ + dη ⊗ ξ = 0` on all basis pairs.
pub fn check_normal(a: &AlmostContactData) -> bool {
    let n = a.dim();
    let deta = ce_d(a.metric.algebra(), &Form::from_covector(&a.eta));
    let nj = nijenhuis(a);
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let c = deta.eval_basis(&[i, j]);
            let mut v = nj[i * n + j].clone();
            vector::axpy(&mut v, &c, &a.xi);
            vector::is_zero(&v)
        })
    })
}

/// `dη = 2Φ`.
pub fn check_contact(a: &AlmostContactData) -> bool {
    let deta = ce_d(a.metric.algebra(), &Form::from_covector(&a.eta));
    deta == fundamental_form(a).scale(&Scalar::from_int(2))
}

/// `(∇_X φ) Y = g(X, Y) ξ − η(Y) X` on basis pairs.
pub fn check_nabla_phi(a: &AlmostContactData, c: &Connection) -> bool {
    let n = a.dim();
    let g = a.metric.metric();
    (0..n).all(|i| {
        let lhs = c.nabla_basis(i).commutator(&a.phi);
        let rhs = Matrix::from_fn(n, n, |r, col| {
            let mut v = &g[(i, col)] * &a.xi[r];
            if r == i {
                v -= &a.eta[col];
            }
            v
        });
        lhs == rhs
    })
}

/// The consequences of the Sasaki condition that the Reeb field must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ReebConsequences {
    /// `∇_X ξ = −φX`
    pub nabla_xi: bool,
    /// `g(∇_X ξ, Y) + g(X, ∇_Y ξ) = 0`
    pub killing: bool,
    /// `dη = 2Φ`
    pub contact: bool,
    /// `R(X, Y) ξ = η(Y) X − η(X) Y`
    pub curvature_xi: bool,
    /// `ric(ξ, X) = (dim − 1) η(X)`
    pub ricci_xi: bool,
}

impl ReebConsequences {
    pub fn all(&self) -> bool {
        self.nabla_xi && self.killing && self.contact && self.curvature_xi && self.ricci_xi
    }
}

pub fn reeb_consequences(a: &AlmostContactData, c: &Connection, r: &CurvatureData) -> ReebConsequences {
    let n = a.dim();
    let g = a.metric.metric();
    let nabla_xi_cols: Vec<Vector> = (0..n).map(|i| c.nabla_basis(i).mul_vec(&a.xi)).collect();
    let k = Matrix::from_columns(n, &nabla_xi_cols);
    let nabla_xi = k == a.phi.neg();
    let gk = g.mul(&k);
    let killing = gk.add(&gk.transpose()).is_zero();
    let curvature_xi = (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = r.r(i, j).mul_vec(&a.xi);
            let mut rhs = vector::zeros(n);
            rhs[i] += &a.eta[j];
            rhs[j] -= &a.eta[i];
            lhs == rhs
        })
    });
    let two_n = Scalar::from_int(n as i64 - 1);
    let ric_xi = r.ricci().vec_mul(&a.xi);
    let ricci_xi = ric_xi == vector::scale(&two_n, &a.eta);
    ReebConsequences { nabla_xi, killing, contact: check_contact(a), curvature_xi, ricci_xi }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SasakiReport {
    pub is_acms: bool,
    pub acms_failure: Option<AcmsFailure>,
    /// `N_φ + dη⊗ξ = 0`
    pub normal: bool,
    /// `dη = 2Φ`
    pub contact: bool,
    /// `(∇_X φ) Y = g(X, Y) ξ − η(Y) X`
    pub nabla_phi_identity: bool,
    pub reeb: ReebConsequences,
    /// `acms ∧ normal ∧ contact`
    pub verdict: bool,
}

impl SasakiReport {
    /// Whether the definition and the `∇φ` characterization agree. Both carry
    /// the almost contact metric hypothesis, without which the identities
    /// are unrelated.
    pub fn characterizations_agree(&self) -> bool {
        self.verdict == (self.is_acms && self.nabla_phi_identity)
    }
}

/// Evaluates both Sasaki characterizations and the Reeb-field consequences.
/// On an almost contact metric structure the two characterizations must
/// agree; a disagreement is returned as an error.
pub fn check_sasaki(a: &AlmostContactData) -> Result<SasakiReport, ContactError> {
    let acms = check_acms(a);
    let c = levi_civita(&a.metric)?;
    let r = curvature(&a.metric, &c);
    let normal = check_normal(a);
    let contact = check_contact(a);
    let nabla_phi_identity = check_nabla_phi(a, &c);
    let report = SasakiReport {
        is_acms: acms.is_ok(),
        acms_failure: acms.err(),
        normal,
        contact,
        nabla_phi_identity,
        reeb: reeb_consequences(a, &c, &r),
        verdict: acms.is_ok() && normal && contact,
    };
    if report.is_acms && !report.characterizations_agree() {
        return Err(ContactError::CharacterizationMismatch { definition: normal && contact, nabla_phi: nabla_phi_identity });
    }
    Ok(report)
}

/// `φ̂ = φ`, `ξ̂ = a⁻¹ξ`, `η̂ = aη`, `ĝ = a g + (a² − a) η⊗η`.
pub fn d_homothety(a: &AlmostContactData, t: &Scalar) -> Result<AlmostContactData, ContactError> {
    if !t.is_positive() {
        return Err(ContactError::NonPositiveParameter);
    }
    let n = a.dim();
    let c = t * t - t;
    let g = a.metric.metric().scale(t).add(&Matrix::from_fn(n, n, |r, col| &c * &(&a.eta[r] * &a.eta[col])));
    let metric = MetricLieAlgebra::new(a.metric.algebra().clone(), g)?;
    let inv = t.recip().expect("positive");
    AlmostContactData::new(metric, a.phi.clone(), vector::scale(&inv, &a.xi), vector::scale(t, &a.eta))
}

/// Reverses the metric on a `φ`-invariant nondegenerate block `W ⊥ ξ`:
/// `g` becomes `−g` on `W` and `φ` becomes `−φ` on `W`, both unchanged on `W⊥`.
/// `ξ`, `η` and `Φ` are unchanged; applying it twice is the identity.
pub fn reverse_metric_sign(a: &AlmostContactData, block: &[Vector]) -> Result<AlmostContactData, ContactError> {
    let n = a.dim();
    let g = a.metric.metric();
    let w = Subspace::span(n, block);
    if w.dim() != block.len() {
        return Err(ContactError::InvalidBlock("block vectors are dependent"));
    }
    if block.iter().any(|v| !w.contains(&a.phi.mul_vec(v))) {
        return Err(ContactError::InvalidBlock("block is not phi-invariant"));
    }
    if block.iter().any(|v| !g.bilinear(v, &a.xi).is_zero()) {
        return Err(ContactError::InvalidBlock("block is not orthogonal to xi"));
    }
    let b = Matrix::from_columns(n, block);
    let gram = b.transpose().mul(g).mul(&b);
    let gram_inv = gram.inverse().map_err(|_| ContactError::InvalidBlock("block is degenerate"))?;
    // Orthogonal projection onto W.
    let p = b.mul(&gram_inv).mul(&b.transpose()).mul(g);
    let two = Scalar::from_int(2);
    let g_new = g.sub(&p.transpose().mul(g).mul(&p).scale(&two));
    let phi_new = a.phi.sub(&a.phi.mul(&p).scale(&two));
    let metric = MetricLieAlgebra::new(a.metric.algebra().clone(), g_new)?;
    let eta = metric.flat(&a.xi);
    AlmostContactData::new(metric, phi_new, a.xi.clone(), eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salamon::{parse_salamon, Bindings};
    use crate::scalar::{int, q};

    fn ex43() -> AlmostContactData {
        let l =
            parse_salamon("(0,−2e^{12}−2e^{34},−3e^{45}−e^{13}+3e^{24},3e^{35}−3e^{23}−e^{14},2e^{12}+2e^{34})", &Bindings::new()).unwrap();
        let m = MetricLieAlgebra::new(l, Matrix::diagonal(&vector::from_ints(&[-1, -1, -1, -1, 1]))).unwrap();
        let phi = Form::basis(5, &[0, 1]).add(&Form::basis(5, &[2, 3]));
        AlmostContactData::from_fundamental_form(m, vector::unit(5, 4), &phi).unwrap()
    }

    #[test]
    fn ex43_is_sasaki() {
        let a = ex43();
        assert_eq!(check_acms(&a), Ok(()));
        assert_eq!(fundamental_form(&a), Form::basis(5, &[0, 1]).add(&Form::basis(5, &[2, 3])));
        let r = check_sasaki(&a).unwrap();
        assert!(r.verdict && r.nabla_phi_identity && r.reeb.all());
        assert_eq!(AlmostContactData::from_reeb(a.metric().clone(), a.xi().clone()).unwrap(), a);
    }

    #[test]
    fn rescaled_xi_fails() {
        let a = ex43();
        let xi = vector::scale(&int(2), a.xi());
        let eta = a.metric().flat(&xi);
        assert_eq!(check_acms(&a.with_xi(xi, eta)), Err(AcmsFailure::EtaOfXi));
    }

    #[test]
    fn perturbed_phi_fails_phi_squared() {
        let a = ex43();
        let mut phi = a.phi().clone();
        phi[(4, 4)] += int(1);
        assert_eq!(check_acms(&a.with_phi(phi)), Err(AcmsFailure::PhiSquared));
    }

    #[test]
    fn abelian_is_not_sasaki() {
        let m = MetricLieAlgebra::new(crate::lie::LieAlgebra::abelian(3).unwrap(), Matrix::identity(3)).unwrap();
        let a = AlmostContactData::from_fundamental_form(m, vector::unit(3, 2), &Form::basis(3, &[0, 1])).unwrap();
        assert_eq!(check_acms(&a), Ok(()));
        let r = check_sasaki(&a).unwrap();
        assert!(r.normal && !r.contact && !r.verdict);
    }

    #[test]
    fn d_homothety_preserves_sasaki() {
        let a = ex43();
        assert_eq!(d_homothety(&a, &int(1)).unwrap(), a);
        for t in [q(1, 2), int(2), int(3), q(7, 5)] {
            let b = d_homothety(&a, &t).unwrap();
            assert_eq!(b.metric().inner(b.xi(), b.xi()), int(1));
            assert!(check_sasaki(&b).unwrap().verdict);
        }
        assert_eq!(d_homothety(&a, &int(0)), Err(ContactError::NonPositiveParameter));
    }
}
