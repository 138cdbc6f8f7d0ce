//! Kähler reduction of z-standard Sasaki algebras and the inverse construction.
//!
//! A [`KahlerSeed`] is a nilpotent pseudo-Kähler algebra `(ǧ, J, ω)` with a
//! derivation `Ď`, a constant `h` and a sign `τ`. [`construct_sasaki`] builds
//! `g̃ = (ǧ ⊕ ⟨b, ξ⟩) ⋊ ⟨e0⟩` in the basis `(ǧ…, b, ξ, e0)`;
//! [`extract_reduction`] recovers the seed from a z-standard structure.

use alloc::vec;
use alloc::vec::Vec;

use crate::contact::{AlmostContactData, ContactError};
use crate::forms::{ce_d, Form};
use crate::lie::{JacobiDefect, LieAlgebra, LieError};
use crate::linalg::{vector, Matrix, Vector};
use crate::metric::{MetricError, MetricLieAlgebra};
use crate::scalar::Scalar;
use crate::standard::{check_rank_one_sasaki, Decomposition, RankOneFrame, StandardError};

/// The first pseudo-Kähler condition that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, thiserror::Error)]
pub enum KahlerClause {
    #[error("dimensions of J, ω and the algebra differ")]
    DimensionMismatch,
    #[error("J² = −id")]
    JSquared,
    #[error("g(J·, J·) = g")]
    JNotIsometry,
    #[error("ω = g(·, J·)")]
    OmegaMismatch,
    #[error("dω = 0")]
    OmegaNotClosed,
    #[error("N_J = 0")]
    NotIntegrable,
}

/// The first seed invariant that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, thiserror::Error)]
pub enum SeedClause {
    #[error("pseudo-Kähler: {0}")]
    Kahler(KahlerClause),
    #[error("ǧ nilpotent")]
    NotNilpotent,
    #[error("τ = ±1")]
    TauNotUnit,
    #[error("Ď is a derivation")]
    NotADerivation,
    #[error("[J, Ď] = 0")]
    JNotCommuting,
    #[error("[Ďˢ, Ďᵃ] = hĎˢ − 2(Ďˢ)²")]
    QuadraticIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("the rank-one Sasaki conditions fail for this ξ")]
    NotRankOneSasaki,
    #[error("b is not central in the ideal")]
    NotZStandard,
    #[error("block form violated: {0}")]
    BlockFormViolation(&'static str),
    #[error("seed invariant violated: {0}")]
    SeedInvariantViolated(SeedClause),
    #[error("the symmetric part of Ď is not a derivation")]
    SymmetricPartNotDerivation,
    #[error("[Ďˢ, Ďᵃ] is nonzero")]
    CommutatorNonzero,
    #[error("representation condition violated: {0}")]
    RepresentationConditionViolated(&'static str),
    #[error("constructed brackets fail Jacobi: {0}")]
    ConstructionNotLie(JacobiDefect),
    #[error(transparent)]
    Standard(#[from] StandardError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Contact(#[from] ContactError),
}

/// A metric Lie algebra with `J` and `ω = g(·, J·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoKahler {
    pub metric: MetricLieAlgebra,
    pub j: Matrix,
    pub omega: Form,
}

impl PseudoKahler {
    pub fn new(metric: MetricLieAlgebra, j: Matrix, omega: Form) -> Self {
        PseudoKahler { metric, j, omega }
    }

    /// Derives `ω = g(·, J·)` from `J`.
    pub fn from_complex_structure(metric: MetricLieAlgebra, j: Matrix) -> Self {
        let omega = omega_from(&metric, &j);
        PseudoKahler { metric, j, omega }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn check(&self) -> Result<(), KahlerClause> {
        kahler_check(&self.metric, &self.j, &self.omega)
    }
}

fn omega_from(m: &MetricLieAlgebra, j: &Matrix) -> Form {
    let gj = m.metric().mul(j);
    let n = m.dim();
    let mut w = Form::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            w.add_term(&[a, b], gj[(a, b)].clone());
        }
    }
    w
}

/// Nijenhuis tensor of `J` on basis pairs.
fn nijenhuis_j(l: &LieAlgebra, j: &Matrix) -> bool {
    let n = l.dim();
    let cols = j.columns();
    for a in 0..n {
        let ea = vector::unit(n, a);
        for b in a + 1..n {
            let eb = vector::unit(n, b);
            let mut v = l.bracket(&cols[a], &cols[b]);
            v = vector::sub(&v, &j.mul_vec(&l.bracket(&cols[a], &eb)));
            v = vector::sub(&v, &j.mul_vec(&l.bracket(&ea, &cols[b])));
            v = vector::sub(&v, &l.bracket(&ea, &eb));
            if !vector::is_zero(&v) {
                return false;
            }
        }
    }
    true
}

/// Checks `J² = −id`, `g(J·,J·) = g`, `ω = g(·,J·)`, `dω = 0` and `N_J = 0`, in that order.
pub fn kahler_check(m: &MetricLieAlgebra, j: &Matrix, omega: &Form) -> Result<(), KahlerClause> {
    let n = m.dim();
    if j.rows() != n || j.cols() != n || omega.dim() != n || omega.degree() != 2 {
        return Err(KahlerClause::DimensionMismatch);
    }
    if j.mul(j) != Matrix::identity(n).neg() {
        return Err(KahlerClause::JSquared);
    }
    if &j.transpose().mul(m.metric()).mul(j) != m.metric() {
        return Err(KahlerClause::JNotIsometry);
    }
    if *omega != omega_from(m, j) {
        return Err(KahlerClause::OmegaMismatch);
    }
    if !ce_d(m.algebra(), omega).is_zero() {
        return Err(KahlerClause::OmegaNotClosed);
    }
    if !nijenhuis_j(m.algebra(), j) {
        return Err(KahlerClause::NotIntegrable);
    }
    Ok(())
}

/// Input data of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerSeed {
    pub kahler: PseudoKahler,
    pub d: Matrix,
    pub h: Scalar,
    pub tau: Scalar,
}

impl KahlerSeed {
    pub fn new(kahler: PseudoKahler, d: Matrix, h: Scalar, tau: Scalar) -> Self {
        KahlerSeed { kahler, d, h, tau }
    }

    pub fn dim(&self) -> usize {
        self.kahler.dim()
    }

    pub fn metric(&self) -> &MetricLieAlgebra {
        &self.kahler.metric
    }

    /// `(Ďˢ, Ďᵃ)`.
    pub fn d_split(&self) -> (Matrix, Matrix) {
        self.metric().sym_anti_split(&self.d)
    }

    /// `Ďω` under the derivation action on forms.
    pub fn d_omega(&self) -> Form {
        self.kahler.omega.act(&self.d)
    }

    pub fn check(&self) -> Result<(), SeedClause> {
        seed_check(self)
    }
}

pub fn seed_check(seed: &KahlerSeed) -> Result<(), SeedClause> {
    seed.kahler.check().map_err(SeedClause::Kahler)?;
    let l = seed.metric().algebra();
    if !l.is_nilpotent().unwrap_or(false) {
        return Err(SeedClause::NotNilpotent);
    }
    if seed.tau.abs() != Scalar::one() {
        return Err(SeedClause::TauNotUnit);
    }
    let n = seed.dim();
    if seed.d.rows() != n || seed.d.cols() != n || !l.is_derivation(&seed.d) {
        return Err(SeedClause::NotADerivation);
    }
    if !seed.kahler.j.commutator(&seed.d).is_zero() {
        return Err(SeedClause::JNotCommuting);
    }
    let (s, a) = seed.d_split();
    if s.commutator(&a) != s.scale(&seed.h).sub(&s.mul(&s).scale(&Scalar::from_int(2))) {
        return Err(SeedClause::QuadraticIdentity);
    }
    Ok(())
}

/// Output of [`construct_sasaki`]: basis `(ǧ…, b, ξ, e0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakiConstruction {
    pub algebra: MetricLieAlgebra,
    pub structure: AlmostContactData,
    pub decomposition: Decomposition,
    pub b: Vector,
    pub xi: Vector,
}

/// Builds the z-standard Sasaki extension of a seed.
pub fn construct_sasaki(seed: &KahlerSeed) -> Result<SasakiConstruction, ReductionError> {
    seed_check(seed).map_err(ReductionError::SeedInvariantViolated)?;
    let m = seed.dim();
    let n = m + 3;
    let (ib, ixi, ie0) = (m, m + 1, m + 2);
    let tau = &seed.tau;
    let two = Scalar::from_int(2);
    let lc = seed.metric().algebra();
    let d_omega = seed.d_omega();
    let omega = &seed.kahler.omega;

    let mut entries = Vec::new();
    for (i, j, k, c) in lc.constants() {
        entries.push((i, j, k, c));
    }
    for (idx, c) in d_omega.terms() {
        entries.push((idx[0], idx[1], ib, -(tau * c)));
    }
    for (idx, c) in omega.terms() {
        entries.push((idx[0], idx[1], ixi, -(&two * c)));
    }
    for x in 0..m {
        for k in 0..m {
            let c = &seed.d[(k, x)];
            if !c.is_zero() {
                entries.push((ie0, x, k, c.clone()));
            }
        }
    }
    entries.push((ie0, ib, ib, seed.h.clone()));
    entries.push((ie0, ib, ixi, -(&two * tau)));
    let l = LieAlgebra::from_constants(n, &entries)?;
    l.jacobi_check().map_err(ReductionError::ConstructionNotLie)?;

    let gc = seed.metric().metric();
    let g = Matrix::from_fn(n, n, |r, c| {
        if r < m && c < m {
            gc[(r, c)].clone()
        } else if r == c {
            if r == ixi {
                Scalar::one()
            } else {
                tau.clone()
            }
        } else {
            Scalar::zero()
        }
    });
    let metric = MetricLieAlgebra::new(l, g)?;
    let jc = &seed.kahler.j;
    let mut phi = Matrix::from_fn(n, n, |r, c| if r < m && c < m { jc[(r, c)].clone() } else { Scalar::zero() });
    phi[(ie0, ib)] = Scalar::one();
    phi[(ib, ie0)] = -Scalar::one();
    let xi = vector::unit(n, ixi);
    let b = vector::unit(n, ib);
    let eta = metric.flat(&xi);
    let structure = AlmostContactData::new(metric.clone(), phi, xi.clone(), eta)?;
    let ideal: Vec<Vector> = (0..ie0).map(|i| vector::unit(n, i)).collect();
    let decomposition = Decomposition::rank_one(metric.clone(), ideal, vector::unit(n, ie0));
    Ok(SasakiConstruction { algebra: metric, structure, decomposition, b, xi })
}

/// Result of [`extract_reduction`]. Vectors are in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub b: Vector,
    pub xi: Vector,
    pub h: Scalar,
    pub tau: Scalar,
    /// Basis of `⟨b, ξ⟩⊥ ∩ g` identified with `ǧ`.
    pub reduction_basis: Vec<Vector>,
    pub seed: KahlerSeed,
    /// `ǧ` basis followed by `ξ`, identified with `g/⟨b⟩`.
    pub quotient_basis: Vec<Vector>,
    pub sasaki_quotient: AlmostContactData,
    /// `Ďω = db♭` on `ǧ`.
    pub d_omega_is_db: bool,
    /// `D(dη) = 2db♭` on `g`.
    pub d_deta_is_2db: bool,
}

/// Takes the Kähler reduction `ǧ = ⟨b, ξ⟩⊥` and the Sasaki quotient `g/⟨b⟩`.
pub fn extract_reduction(dec: &Decomposition, xi: &[Scalar]) -> Result<ReductionReport, ReductionError> {
    let frame = RankOneFrame::new(dec)?;
    let report = check_rank_one_sasaki(dec, xi)?;
    if !report.all_pass() {
        return Err(ReductionError::NotRankOneSasaki);
    }
    let m = &frame.ideal;
    let l = m.algebra();
    let k = frame.ideal_dim();
    let xi_c = frame.to_coords(xi).ok_or(StandardError::XiNotInIdeal)?;
    let b_c = frame.to_coords(&report.b).ok_or(ReductionError::BlockFormViolation("b outside the ideal"))?;
    if !l.center().contains(&b_c) {
        return Err(ReductionError::NotZStandard);
    }
    if !l.center().contains(&xi_c) {
        return Err(ReductionError::BlockFormViolation("ξ not central"));
    }
    let tau = frame.tau.clone();

    // D in the splitting ⟨b,ξ⟩⊥ ⊕ ⟨b⟩ ⊕ ⟨ξ⟩.
    let d = &frame.d;
    if !vector::is_zero(&d.mul_vec(&xi_c)) {
        return Err(ReductionError::BlockFormViolation("D(ξ) ≠ 0"));
    }
    let db = d.mul_vec(&b_c);
    let h = &tau * &m.inner(&db, &b_c);
    let two_tau = Scalar::from_int(2) * &tau;
    if db != vector::sub(&vector::scale(&h, &b_c), &vector::scale(&two_tau, &xi_c)) {
        return Err(ReductionError::BlockFormViolation("D(b) ≠ hb − 2τξ"));
    }
    let check_basis = Matrix::from_rows(vec![m.flat(&b_c), m.flat(&xi_c)]).kernel();
    let r = check_basis.len();
    let bc = Matrix::from_columns(k, &check_basis);
    let in_check = |v: &[Scalar], what: &'static str| -> Result<Vector, ReductionError> {
        bc.solve(v).map(|(x, _)| x).ok_or(ReductionError::BlockFormViolation(what))
    };
    let lc = l.project(&check_basis, &[b_c.clone(), xi_c.clone()])?;
    let mut d_cols = Vec::with_capacity(r);
    for u in &check_basis {
        d_cols.push(in_check(&d.mul_vec(u), "D does not preserve ⟨b, ξ⟩⊥")?);
    }
    let d_check = Matrix::from_columns(r, &d_cols);
    let g_check = bc.transpose().mul(m.metric()).mul(&bc);

    let eta = Form::from_covector(&m.flat(&xi_c));
    let deta = ce_d(l, &eta);
    let half = Scalar::new(1, 2);
    let mut j_cols = Vec::with_capacity(r);
    for u in &check_basis {
        let v = vector::scale(&-&half, &m.sharp(&deta.interior(u).to_covector()));
        j_cols.push(in_check(&v, "J does not preserve ⟨b, ξ⟩⊥")?);
    }
    let j = Matrix::from_columns(r, &j_cols);
    let omega = deta.pullback(&bc).scale(&half);
    let check_metric = MetricLieAlgebra::new(lc, g_check)?;
    let seed = KahlerSeed::new(PseudoKahler::new(check_metric, j.clone(), omega), d_check, h.clone(), tau.clone());
    seed_check(&seed).map_err(ReductionError::SeedInvariantViolated)?;

    let b_flat = m.flat_form(&b_c);
    let dbf = ce_d(l, &b_flat);
    let d_omega_is_db = seed.d_omega() == dbf.pullback(&bc);
    let d_deta_is_2db = deta.act(d) == dbf.scale(&Scalar::from_int(2));

    // g/⟨b⟩ on ⟨b⟩⊥ ∩ g = ǧ ⊕ ⟨ξ⟩.
    let mut qbasis = check_basis.clone();
    qbasis.push(xi_c.clone());
    let ql = l.project(&qbasis, core::slice::from_ref(&b_c))?;
    let qc = Matrix::from_columns(k, &qbasis);
    let qm = MetricLieAlgebra::new(ql, qc.transpose().mul(m.metric()).mul(&qc))?;
    let q = r + 1;
    let qphi = Matrix::from_fn(q, q, |a, c| if a < r && c < r { j[(a, c)].clone() } else { Scalar::zero() });
    let qxi = vector::unit(q, r);
    let qeta = qm.flat(&qxi);
    let sasaki_quotient = AlmostContactData::new(qm, qphi, qxi, qeta)?;

    Ok(ReductionReport {
        b: report.b,
        xi: xi.to_vec(),
        h,
        tau,
        reduction_basis: check_basis.iter().map(|v| frame.to_ambient(v)).collect(),
        seed,
        quotient_basis: qbasis.iter().map(|v| frame.to_ambient(v)).collect(),
        sasaki_quotient,
        d_omega_is_db,
        d_deta_is_2db,
    })
}

/// Replaces `Ď` by `Ďˢ`; valid when `Ďˢ` is a derivation commuting with `Ďᵃ`.
pub fn symmetrize_d(seed: &KahlerSeed) -> Result<KahlerSeed, ReductionError> {
    let (s, a) = seed.d_split();
    if !seed.metric().algebra().is_derivation(&s) {
        return Err(ReductionError::SymmetricPartNotDerivation);
    }
    if !s.commutator(&a).is_zero() {
        return Err(ReductionError::CommutatorNonzero);
    }
    Ok(KahlerSeed { d: s, ..seed.clone() })
}

/// `hĎ − 2Ď² = 0`: the minimal polynomial of `Ď` divides `ht − 2t²`.
pub fn min_poly_divides(seed: &KahlerSeed) -> bool {
    let d = &seed.d;
    d.scale(&seed.h) == d.mul(d).scale(&Scalar::from_int(2))
}

/// Brings `h` to `0` or `2` by a sign flip of `(Ď, h)` and a joint rescaling.
pub fn h_normalize(seed: &KahlerSeed) -> KahlerSeed {
    if seed.h.is_zero() {
        return seed.clone();
    }
    let c = Scalar::from_int(2).checked_div(&seed.h).expect("h is nonzero");
    KahlerSeed { d: seed.d.scale(&c), h: Scalar::from_int(2), ..seed.clone() }
}

/// `(g, ω) ↦ (−g, −ω)` with `J`, `Ď`, `h`, `τ` unchanged.
pub fn reverse_seed(seed: &KahlerSeed) -> Result<KahlerSeed, ReductionError> {
    let m = seed.metric();
    let metric = MetricLieAlgebra::new(m.algebra().clone(), m.metric().neg())?;
    let kahler = PseudoKahler::new(metric, seed.kahler.j.clone(), seed.kahler.omega.neg());
    Ok(KahlerSeed { kahler, ..seed.clone() })
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.rows(), b.rows());
    Matrix::from_fn(p + q, p + q, |r, c| {
        if r < p && c < p {
            a[(r, c)].clone()
        } else if r >= p && c >= p {
            b[(r - p, c - p)].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// `ǧ0 ⋉_ρ ǧ1` with `Ď = (h/2)π₁`, then [`construct_sasaki`]. `rho[i]` is
/// `ρ` of the `i`-th basis vector of `ǧ0`, acting on the abelian `ǧ1`.
pub fn graded_construct(
    k0: &PseudoKahler,
    k1: &PseudoKahler,
    rho: &[Matrix],
    h: &Scalar,
    tau: &Scalar,
) -> Result<SasakiConstruction, ReductionError> {
    use ReductionError::RepresentationConditionViolated as Bad;
    let (m0, m1) = (k0.dim(), k1.dim());
    if !k1.metric.algebra().is_abelian() {
        return Err(Bad("ǧ1 abelian"));
    }
    if rho.len() != m0 || rho.iter().any(|r| r.rows() != m1 || r.cols() != m1) {
        return Err(Bad("one m1×m1 matrix per basis vector of ǧ0"));
    }
    let rho_of = |v: &[Scalar]| -> Matrix { v.iter().zip(rho).fold(Matrix::zeros(m1, m1), |acc, (c, r)| acc.add(&r.scale(c))) };
    let l0 = k0.metric.algebra();
    for i in 0..m0 {
        for j in i + 1..m0 {
            if rho[i].commutator(&rho[j]) != rho_of(&l0.bracket_basis(i, j)) {
                return Err(Bad("ρ is a homomorphism"));
            }
        }
    }
    let j1 = &k1.j;
    for i in 0..m0 {
        if !k1.omega.act(&rho[i]).is_zero() {
            return Err(Bad("ρ(X)ω₁ = 0"));
        }
        let rj = rho_of(&k0.j.column(i));
        if !j1.commutator(&rho[i]).add(&rj.commutator(j1).mul(j1)).is_zero() {
            return Err(Bad("[J₁, ρ(X)] + [ρ(J₀X), J₁]J₁ = 0"));
        }
    }
    let m = m0 + m1;
    let mut entries: Vec<(usize, usize, usize, Scalar)> = l0.constants();
    for i in 0..m0 {
        for a in 0..m1 {
            for c in 0..m1 {
                let v = &rho[i][(c, a)];
                if !v.is_zero() {
                    entries.push((i, m0 + a, m0 + c, v.clone()));
                }
            }
        }
    }
    let l = LieAlgebra::from_constants(m, &entries)?;
    l.jacobi_check().map_err(ReductionError::ConstructionNotLie)?;
    let metric = MetricLieAlgebra::new(l, block_diag(k0.metric.metric(), k1.metric.metric()))?;
    let mut omega = Form::zero(m, 2);
    for (idx, c) in k0.omega.terms() {
        omega.add_term(idx, c.clone());
    }
    for (idx, c) in k1.omega.terms() {
        omega.add_term(&[idx[0] + m0, idx[1] + m0], c.clone());
    }
    let half_h = h * &Scalar::new(1, 2);
    let d = Matrix::from_fn(m, m, |r, c| if r == c && r >= m0 { half_h.clone() } else { Scalar::zero() });
    let seed = KahlerSeed::new(PseudoKahler::new(metric, block_diag(&k0.j, j1), omega), d, h.clone(), tau.clone());
    construct_sasaki(&seed)
}

/// Kähler analogue: given a pseudo-Kähler `g̃ = g ⋊ ⟨e0⟩` (rank-one orthogonal
/// decomposition and `J̃`), forms the central extension by `2ω̃` with unit `ξ`
/// appended last and reduces it along `ξ`.
pub fn kahler_reduction(dec: &Decomposition, j: &Matrix) -> Result<ReductionReport, ReductionError> {
    let m = &dec.metric;
    let omega = omega_from(m, j);
    kahler_check(m, j, &omega).map_err(|c| ReductionError::SeedInvariantViolated(SeedClause::Kahler(c)))?;
    let n = m.dim();
    let two = Scalar::from_int(2);
    let mut entries = m.algebra().constants();
    for (idx, c) in omega.terms() {
        entries.push((idx[0], idx[1], n, -(&two * c)));
    }
    let l = LieAlgebra::from_constants(n + 1, &entries)?;
    let g = Matrix::from_fn(n + 1, n + 1, |r, c| {
        if r < n && c < n {
            m.metric()[(r, c)].clone()
        } else if r == c {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let ext = MetricLieAlgebra::new(l, g)?;
    let lift = |v: &Vector| {
        let mut w = v.clone();
        w.push(Scalar::zero());
        w
    };
    let mut ideal: Vec<Vector> = dec.ideal.iter().map(lift).collect();
    let xi = vector::unit(n + 1, n);
    ideal.push(xi.clone());
    let abelian = dec.abelian.iter().map(lift).collect();
    extract_reduction(&Decomposition::new(ext, ideal, abelian), &xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::check_sasaki;
    use crate::salamon::{parse_salamon, print_salamon, Bindings};
    use crate::scalar::{int, q};
    use crate::standard::check_z_standard;

    fn plane(sign: i64) -> PseudoKahler {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(2).unwrap(), Matrix::identity(2).scale(&int(sign))).unwrap();
        // J = e¹⊗e₂ − e²⊗e₁
        let j = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        PseudoKahler::from_complex_structure(m, j)
    }

    fn seed(sign: i64, d: i64, h: i64, tau: i64) -> KahlerSeed {
        KahlerSeed::new(plane(sign), Matrix::identity(2).scale(&int(d)), int(h), int(tau))
    }

    #[test]
    fn plane_is_kahler() {
        let k = plane(1);
        assert_eq!(k.omega, Form::basis(2, &[0, 1]).neg());
        assert_eq!(k.check(), Ok(()));
    }

    #[test]
    fn neutral_four_space_is_kahler() {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(4).unwrap(), Matrix::diagonal(&vector::from_ints(&[1, 1, -1, -1]))).unwrap();
        let j = Matrix::from_int_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let omega = Form::basis(4, &[0, 1]).neg().add(&Form::basis(4, &[2, 3]));
        assert_eq!(kahler_check(&m, &j, &omega), Ok(()));
        // de^1 = e^{34} breaks closedness of ω
        let l = parse_salamon("(e^{34},0,0,0)", &Bindings::new()).unwrap();
        let bad = MetricLieAlgebra::new(l, m.metric().clone()).unwrap();
        assert_eq!(kahler_check(&bad, &j, &omega), Err(KahlerClause::OmegaNotClosed));
    }

    #[test]
    fn dim5_algebras_from_plane() {
        for tau in [1, -1] {
            let bind = Bindings::new().with(crate::salamon::Symbol::Tau, int(tau));
            let cases = [(0, 0, "(0,0,0,−2e^{12}−2τe^{35},0)"), (1, 2, "(e^{15},e^{25},2τe^{12}+2e^{35},−2e^{12}−2τe^{35},0)")];
            for (d, h, expected) in cases {
                let c = construct_sasaki(&seed(1, d, h, tau)).unwrap();
                let expected = crate::salamon::normalize(expected, &bind).unwrap();
                assert_eq!(print_salamon(c.algebra.algebra()), expected);
                assert!(check_sasaki(&c.structure).unwrap().verdict);
                assert_eq!(check_z_standard(&c.decomposition, &c.xi), Ok(true));
            }
        }
    }

    #[test]
    fn roundtrip_plane() {
        for s in [seed(1, 1, 2, 1), seed(-1, 0, 0, -1), seed(1, 0, 2, -1)] {
            let c = construct_sasaki(&s).unwrap();
            let r = extract_reduction(&c.decomposition, &c.xi).unwrap();
            assert_eq!(r.seed, s);
            assert_eq!(r.b, c.b);
            assert!(r.d_omega_is_db && r.d_deta_is_2db);
        }
    }

    #[test]
    fn ex43_prime_reduction() {
        let l = parse_salamon("(0,−2e^{12}−2e^{34},−e^{13},−e^{14},2e^{12}+2e^{34})", &Bindings::new()).unwrap();
        let m = MetricLieAlgebra::new(l, Matrix::diagonal(&vector::from_ints(&[-1, -1, -1, -1, 1]))).unwrap();
        let u = |i| vector::unit(5, i);
        let dec = Decomposition::rank_one(m, vec![u(1), u(2), u(3), u(4)], u(0));
        let r = extract_reduction(&dec, &u(4)).unwrap();
        assert_eq!(r.reduction_basis, vec![u(2), u(3)]);
        assert_eq!(r.seed.d, Matrix::identity(2));
        assert_eq!(r.b, vector::neg(&u(1)));
        assert_eq!((r.h.clone(), r.tau.clone()), (int(2), int(-1)));
        assert_eq!(r.seed.kahler.omega, Form::basis(2, &[0, 1]));
        let ql = r.sasaki_quotient.metric().algebra();
        assert_eq!(print_salamon(ql), "(0,0,2e^{12})");
        assert!(check_sasaki(&r.sasaki_quotient).unwrap().verdict);
    }

    #[test]
    fn normalization_and_symmetrization() {
        let s = seed(1, 2, 4, 1);
        assert_eq!(h_normalize(&s), seed(1, 1, 2, 1));
        assert_eq!(h_normalize(&seed(1, -1, -2, 1)), seed(1, 1, 2, 1));
        assert_eq!(h_normalize(&seed(1, 0, 0, 1)), seed(1, 0, 0, 1));
        // Ď = aI + cJ on the plane: symmetric part is aI
        let j = plane(1).j;
        let d = Matrix::identity(2).add(&j.scale(&q(3, 2)));
        let s = KahlerSeed::new(plane(1), d, int(2), int(1));
        assert_eq!(s.check(), Ok(()));
        let sym = symmetrize_d(&s).unwrap();
        assert_eq!(sym.d, Matrix::identity(2));
        assert!(min_poly_divides(&sym));
        let c = construct_sasaki(&s).unwrap();
        assert!(check_sasaki(&c.structure).unwrap().verdict);
    }

    #[test]
    fn seed_violations_named() {
        let mut s = seed(1, 1, 2, 1);
        s.h = int(3);
        assert_eq!(construct_sasaki(&s), Err(ReductionError::SeedInvariantViolated(SeedClause::QuadraticIdentity)));
        let mut s = seed(1, 1, 2, 1);
        s.d[(0, 0)] = int(2);
        assert_eq!(s.check(), Err(SeedClause::JNotCommuting));
    }

    #[test]
    fn reversed_seed_still_constructs() {
        let s = reverse_seed(&seed(1, 1, 2, 1)).unwrap();
        let c = construct_sasaki(&s).unwrap();
        assert!(check_sasaki(&c.structure).unwrap().verdict);
    }

    #[test]
    fn graded_plane_plane() {
        for tau in [1, -1] {
            let c = graded_construct(&plane(1), &plane(1), &[Matrix::zeros(2, 2), Matrix::zeros(2, 2)], &int(2), &int(tau)).unwrap();
            assert!(check_sasaki(&c.structure).unwrap().verdict);
            // db♭ = −hω₁
            let bf = c.algebra.flat_form(&c.b);
            let on_g = Matrix::from_columns(7, &(0..6).map(|i| vector::unit(7, i)).collect::<Vec<_>>());
            let db = ce_d(c.algebra.algebra(), &bf).pullback(&on_g);
            let omega1 = Form::basis(6, &[2, 3]).neg();
            assert_eq!(db, omega1.scale(&int(-2)));
        }
        let empty = PseudoKahler::from_complex_structure(
            MetricLieAlgebra::new(LieAlgebra::abelian(0).unwrap(), Matrix::zeros(0, 0)).unwrap(),
            Matrix::zeros(0, 0),
        );
        let four = {
            let m = MetricLieAlgebra::new(LieAlgebra::abelian(4).unwrap(), Matrix::identity(4)).unwrap();
            let j = Matrix::from_int_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
            PseudoKahler::from_complex_structure(m, j)
        };
        let c = graded_construct(&empty, &four, &[], &int(2), &int(1)).unwrap();
        assert!(check_sasaki(&c.structure).unwrap().verdict);
    }

    #[test]
    fn kahler_analogue() {
        // Remove ξ from a construction: g̃/⟨ξ⟩ is pseudo-Kähler with J̃ = φ.
        let c = construct_sasaki(&seed(1, 1, 2, 1)).unwrap();
        let keep = [0usize, 1, 2, 4];
        let basis: Vec<Vector> = keep.iter().map(|&i| vector::unit(5, i)).collect();
        let l = c.algebra.algebra().project(&basis, core::slice::from_ref(&c.xi)).unwrap();
        let g = c.algebra.metric().select(&keep, &keep);
        let m = MetricLieAlgebra::new(l, g).unwrap();
        let j = c.structure.phi().select(&keep, &keep);
        let u = |i| vector::unit(4, i);
        let dec = Decomposition::rank_one(m, vec![u(0), u(1), u(2)], u(3));
        let r = kahler_reduction(&dec, &j).unwrap();
        assert_eq!(r.seed, seed(1, 1, 2, 1));
    }
}
