//! Standard decompositions `g̃ = g ⋊ a`, rank-one Sasaki conditions,
//! z-standard detection and isometrization by symmetric parts.

use alloc::vec;
use alloc::vec::Vec;

use crate::contact::{check_sasaki, AlmostContactData, ContactError};
use crate::forms::{ce_d, Form};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::metric::{MetricError, MetricLieAlgebra};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StandardError {
    #[error("ideal and abelian parts do not form a basis of the algebra")]
    NotComplementary,
    #[error("the nilpotent part is not an ideal")]
    NotAnIdeal,
    #[error("the ideal is not nilpotent")]
    NotNilpotent,
    #[error("the abelian part is not an abelian subalgebra")]
    NotAbelian,
    #[error("the ideal and the abelian part are not orthogonal")]
    NotOrthogonal,
    #[error("decomposition has rank {rank}; only rank one is supported")]
    NotRankOne { rank: usize },
    #[error("g(e0, e0) must be +1 or -1")]
    E0NotUnit,
    #[error("xi does not lie in the ideal")]
    XiNotInIdeal,
    #[error("g(xi, xi) must be 1")]
    XiNotUnit,
    #[error("chi({index}) is not a derivation of the ideal")]
    NotADerivation { index: usize },
    #[error("chi({index}) does not vanish on the abelian part")]
    ChiNonzeroOnA { index: usize },
    #[error("symmetric part of chi({index}) differs from that of ad")]
    SymmetricPartMismatch { index: usize },
    #[error("[chi(X), ad Y] is nonzero")]
    CommutatorNonzero,
    #[error("chi is not a Lie algebra homomorphism")]
    NotAHomomorphism,
    #[error("wrong number of chi matrices: expected {expected}, found {found}")]
    ChiCount { expected: usize, found: usize },
    #[error("the almost contact structure is not Sasaki")]
    NotSasaki,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Contact(#[from] ContactError),
}

/// A splitting `g̃ = g ⊕ a` of a metric Lie algebra, bases given in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub metric: MetricLieAlgebra,
    pub ideal: Vec<Vector>,
    pub abelian: Vec<Vector>,
}

impl Decomposition {
    pub fn new(metric: MetricLieAlgebra, ideal: Vec<Vector>, abelian: Vec<Vector>) -> Self {
        Decomposition { metric, ideal, abelian }
    }

    /// Rank one with `a = ⟨e0⟩`.
    pub fn rank_one(metric: MetricLieAlgebra, ideal: Vec<Vector>, e0: Vector) -> Self {
        Decomposition { metric, ideal, abelian: vec![e0] }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.metric.algebra()
    }

    pub fn ideal_space(&self) -> Subspace {
        Subspace::span(self.dim(), &self.ideal)
    }

    pub fn abelian_space(&self) -> Subspace {
        Subspace::span(self.dim(), &self.abelian)
    }

    /// `[ideal | abelian]` as columns.
    pub fn adapted_basis(&self) -> Matrix {
        let mut cols = self.ideal.clone();
        cols.extend(self.abelian.iter().cloned());
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Ideal + abelian subalgebra + complementary; no metric or nilpotency conditions.
    pub fn check_semidirect(&self) -> Result<(), StandardError> {
        let n = self.dim();
        if self.ideal.len() + self.abelian.len() != n || self.adapted_basis().rank() != n {
            return Err(StandardError::NotComplementary);
        }
        let l = self.algebra();
        if !l.is_ideal(&self.ideal_space()) {
            return Err(StandardError::NotAnIdeal);
        }
        for x in &self.abelian {
            for y in &self.abelian {
                if !vector::is_zero(&l.bracket(x, y)) {
                    return Err(StandardError::NotAbelian);
                }
            }
        }
        Ok(())
    }

    fn check_orthogonal(&self) -> Result<(), StandardError> {
        for u in &self.ideal {
            for x in &self.abelian {
                if !self.metric.inner(u, x).is_zero() {
                    return Err(StandardError::NotOrthogonal);
                }
            }
        }
        Ok(())
    }

    /// The ideal as a Lie algebra in its own basis.
    pub fn ideal_algebra(&self) -> Result<LieAlgebra, StandardError> {
        Ok(self.algebra().restrict(&self.ideal)?)
    }
}

/// Orthogonal, `g` a nilpotent ideal, `a` an abelian subalgebra, `g ⊕ a = g̃`.
pub fn check_standard(dec: &Decomposition) -> Result<(), StandardError> {
    dec.check_semidirect()?;
    if !dec.ideal_algebra()?.is_nilpotent()? {
        return Err(StandardError::NotNilpotent);
    }
    dec.check_orthogonal()
}

/// `ad X` metric-symmetric on `g̃` for every basis vector `X` of `a`.
pub fn is_pseudo_iwasawa(dec: &Decomposition) -> bool {
    let l = dec.algebra();
    dec.abelian.iter().all(|x| dec.metric.is_metric_symmetric(&l.ad(x)))
}

/// Standard and pseudo-Iwasawa.
pub fn check_pseudo_iwasawa(dec: &Decomposition) -> Result<bool, StandardError> {
    check_standard(dec)?;
    Ok(is_pseudo_iwasawa(dec))
}

/// For a Sasaki structure, `true` iff `dec` is not pseudo-Iwasawa (which
/// must always be the case).
pub fn no_pseudo_iwasawa_audit(a: &AlmostContactData, dec: &Decomposition) -> Result<bool, StandardError> {
    if !check_sasaki(a)?.verdict {
        return Err(StandardError::NotSasaki);
    }
    Ok(!is_pseudo_iwasawa(dec))
}

/// A rank-one decomposition written in the basis of the ideal:
/// the ideal `g` with its restricted metric, `D = ad e0|_g` and `τ = g̃(e0, e0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneFrame {
    pub ideal: MetricLieAlgebra,
    pub d: Matrix,
    pub tau: Scalar,
    pub e0: Vector,
    /// Columns are the ideal basis in ambient coordinates.
    pub basis: Matrix,
}

impl RankOneFrame {
    /// Requires a semidirect, orthogonal rank-one decomposition with `τ = ±1`.
    /// Nilpotency of the ideal is not required.
    pub fn new(dec: &Decomposition) -> Result<Self, StandardError> {
        if dec.abelian.len() != 1 {
            return Err(StandardError::NotRankOne { rank: dec.abelian.len() });
        }
        dec.check_semidirect()?;
        dec.check_orthogonal()?;
        let e0 = dec.abelian[0].clone();
        let tau = dec.metric.inner(&e0, &e0);
        if tau.abs() != Scalar::one() {
            return Err(StandardError::E0NotUnit);
        }
        let n = dec.dim();
        let basis = Matrix::from_columns(n, &dec.ideal);
        let l = dec.algebra();
        let mut dcols = Vec::with_capacity(dec.ideal.len());
        for u in &dec.ideal {
            let (c, _) = basis.solve(&l.bracket(&e0, u)).ok_or(StandardError::NotAnIdeal)?;
            dcols.push(c);
        }
        let d = Matrix::from_columns(dec.ideal.len(), &dcols);
        let g = basis.transpose().mul(dec.metric.metric()).mul(&basis);
        let ideal = MetricLieAlgebra::new(dec.ideal_algebra()?, g)?;
        Ok(RankOneFrame { ideal, d, tau, e0, basis })
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.dim()
    }

    pub fn to_ambient(&self, coords: &[Scalar]) -> Vector {
        self.basis.mul_vec(coords)
    }

    pub fn to_coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.basis.solve(v).map(|(x, _)| x)
    }

    /// `(Dˢ, Dᵃ)` for the restricted metric.
    pub fn d_split(&self) -> (Matrix, Matrix) {
        self.ideal.sym_anti_split(&self.d)
    }
}

/// Outcome of the rank-one Sasaki conditions for a given `ξ ∈ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneReport {
    /// `ξ` and `b = Dᵃξ` in ambient coordinates.
    pub xi: Vector,
    pub b: Vector,
    /// `D(ξ) = 0`
    pub d_xi: bool,
    /// `(ad ξ)ˢ = 0`
    pub ad_xi_sym: bool,
    /// `(ad b)*(ξ) = 0`
    pub ad_b_star_xi: bool,
    /// `Dᵃ(dη) = 0`
    pub d_anti_deta: bool,
    /// `Dᵃ(b) = −τξ`
    pub d_anti_b: bool,
    /// `η∧x♭ = ¼α_x − ¼(ad x)*dη + ¼d(L_xη) + τ b♭∧(Dˢx)♭` for all basis `x`
    pub eta_x: bool,
    /// `Dˢ(x)⌟dη + x⌟db♭ + b⌟dx♭ + [x,b]♭ = 0` for all basis `x`
    pub b_equation: bool,
    /// `g(w,u) = g(ξ,w)g(ξ,u) + τg(b,w)g(b,u) + ¼g((ad w)*ξ, (ad u)*ξ)`
    pub acg: bool,
    /// `g(b, b) = τ`
    pub b_norm: bool,
    /// `g(b, ξ) = 0`
    pub b_perp_xi: bool,
    /// `φ(w) = ½(ad w)*ξ + τg(b,w)e0`, `φ(e0) = −b`, with `η = ξ♭` on `g̃`.
    pub structure: AlmostContactData,
}

impl RankOneReport {
    /// The displayed Sasaki conditions: three on `ξ`, two on `D`, and the `η∧x♭` and `b` equations.
    pub fn all_pass(&self) -> bool {
        self.d_xi && self.ad_xi_sym && self.ad_b_star_xi && self.d_anti_deta && self.d_anti_b && self.eta_x && self.b_equation
    }
}

/// Checks the rank-one Sasaki conditions for `ξ` (ambient coordinates) and assembles `φ`.
pub fn check_rank_one_sasaki(dec: &Decomposition, xi: &[Scalar]) -> Result<RankOneReport, StandardError> {
    let frame = RankOneFrame::new(dec)?;
    rank_one_report(dec, &frame, xi)
}

fn rank_one_report(dec: &Decomposition, frame: &RankOneFrame, xi_amb: &[Scalar]) -> Result<RankOneReport, StandardError> {
    let xi = frame.to_coords(xi_amb).ok_or(StandardError::XiNotInIdeal)?;
    let m = &frame.ideal;
    let l = m.algebra();
    let k = frame.ideal_dim();
    if m.inner(&xi, &xi) != Scalar::one() {
        return Err(StandardError::XiNotUnit);
    }
    let tau = &frame.tau;
    let quarter = Scalar::new(1, 4);
    let half = Scalar::new(1, 2);
    let (ds, da) = frame.d_split();
    let b = da.mul_vec(&xi);
    let eta = Form::from_covector(&m.flat(&xi));
    let deta = ce_d(l, &eta);
    let b_flat = m.flat_form(&b);
    let db = ce_d(l, &b_flat);

    let d_xi = vector::is_zero(&frame.d.mul_vec(&xi));
    let ad_xi_sym = m.sym_anti_split(&l.ad(&xi)).0.is_zero();
    let ad_b_star_xi = vector::is_zero(&m.ad_star(&b).mul_vec(&xi));
    let d_anti_deta = deta.act(&da).is_zero();
    let d_anti_b = da.mul_vec(&b) == vector::scale(&-tau, &xi);

    let ad_star: Vec<Matrix> = (0..k).map(|u| m.ad_star(&vector::unit(k, u))).collect();
    let mut eta_x = true;
    let mut b_equation = true;
    for x in 0..k {
        let ex = vector::unit(k, x);
        let x_flat = m.flat_form(&ex);
        let lhs = eta.wedge(&x_flat);
        let mut alpha = Form::zero(k, 2);
        for u in 0..k {
            for w in u + 1..k {
                let a = deta.eval(&[ad_star[u].column(x), vector::unit(k, w)]);
                let c = deta.eval(&[ad_star[w].column(x), vector::unit(k, u)]);
                alpha.add_term(&[u, w], a - c);
            }
        }
        let rhs = alpha
            .sub(&deta.act(&ad_star[x]))
            .add(&ce_d(l, &m.lie_derivative(&ex, &eta)))
            .scale(&quarter)
            .add(&b_flat.wedge(&m.flat_form(&ds.column(x))).scale(tau));
        if lhs != rhs {
            eta_x = false;
        }
        let beq =
            deta.interior(&ds.column(x)).add(&db.interior(&ex)).add(&ce_d(l, &x_flat).interior(&b)).add(&m.flat_form(&l.bracket(&ex, &b)));
        if !beq.is_zero() {
            b_equation = false;
        }
    }

    let g = m.metric();
    let gb = m.flat(&b);
    let gxi = m.flat(&xi);
    let shifted: Vec<Vector> = (0..k).map(|w| ad_star[w].mul_vec(&xi)).collect();
    let acg = (0..k).all(|w| {
        (0..k).all(|u| {
            let rhs = &gxi[w] * &gxi[u] + tau * &(&gb[w] * &gb[u]) + &quarter * &m.inner(&shifted[w], &shifted[u]);
            g[(w, u)] == rhs
        })
    });
    let b_norm = m.inner(&b, &b) == *tau;
    let b_perp_xi = m.inner(&b, &xi).is_zero();

    // Assemble φ on the adapted basis (ideal…, e0), then convert to ambient coordinates.
    let n = dec.dim();
    let mut images: Vec<Vector> = Vec::with_capacity(n);
    for w in 0..k {
        let mut v = frame.to_ambient(&vector::scale(&half, &shifted[w]));
        vector::axpy(&mut v, &(tau * &gb[w]), &frame.e0);
        images.push(v);
    }
    let b_amb = frame.to_ambient(&b);
    images.push(vector::neg(&b_amb));
    let mut cols = frame.basis.columns();
    cols.push(frame.e0.clone());
    let p = Matrix::from_columns(n, &cols);
    let phi = Matrix::from_columns(n, &images).mul(&p.inverse().map_err(|_| StandardError::NotComplementary)?);
    let xi_amb = xi_amb.to_vec();
    let eta_amb = dec.metric.flat(&xi_amb);
    let structure = AlmostContactData::new(dec.metric.clone(), phi, xi_amb.clone(), eta_amb)?;

    Ok(RankOneReport {
        xi: xi_amb,
        b: b_amb,
        d_xi,
        ad_xi_sym,
        ad_b_star_xi,
        d_anti_deta,
        d_anti_b,
        eta_x,
        b_equation,
        acg,
        b_norm,
        b_perp_xi,
        structure,
    })
}

/// Rank-one conditions pass and `b` is central in `g`.
pub fn check_z_standard(dec: &Decomposition, xi: &[Scalar]) -> Result<bool, StandardError> {
    let frame = RankOneFrame::new(dec)?;
    let report = rank_one_report(dec, &frame, xi)?;
    if !report.all_pass() {
        return Ok(false);
    }
    let b = frame.to_coords(&report.b).expect("b lies in the ideal");
    Ok(frame.ideal.algebra().center().contains(&b))
}

/// Rationals `p/q` with `|p| ≤ h`, `1 ≤ q ≤ h`, in increasing order (zero included).
pub fn height_bounded(h: i64) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero()];
    for q in 1..=h {
        for p in 1..=h {
            let v = Scalar::new(p, q);
            if !out.contains(&v) {
                out.push(v.clone());
                out.push(-v);
            }
        }
    }
    out.sort();
    out
}

/// Projective representatives (first nonzero coordinate 1) of the nonzero
/// combinations of `basis` with coefficients in `coeffs`.
fn projective_combinations(n: usize, basis: &[Vector], coeffs: &[Scalar]) -> Vec<Vector> {
    let k = basis.len();
    let mut out = Vec::new();
    for lead in 0..k {
        let rest = k - lead - 1;
        let mut idx = vec![0usize; rest];
        loop {
            let mut c = vector::zeros(k);
            c[lead] = Scalar::one();
            for (t, &i) in idx.iter().enumerate() {
                c[lead + 1 + t] = coeffs[i].clone();
            }
            out.push(vector::combine(n, &c, basis));
            // odometer
            let mut pos = 0;
            loop {
                if pos == rest {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < coeffs.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == rest {
                break;
            }
        }
    }
    out
}

fn normalize_projective(v: &[Scalar]) -> Option<Vector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.recip().expect("nonzero");
    Some(vector::scale(&inv, v))
}

/// Whether `X` is non-null and its centralizer is a nilpotent ideal of codimension one.
pub fn is_z_witness(m: &MetricLieAlgebra, x: &[Scalar]) -> Result<bool, StandardError> {
    if m.inner(x, x).is_zero() {
        return Ok(false);
    }
    let l = m.algebra();
    let z = l.centralizer(x);
    if z.codim() != 1 || !l.is_ideal(&z) {
        return Ok(false);
    }
    Ok(l.restrict(z.basis())?.is_nilpotent()?)
}

/// Height bound used by [`scan_z_standard`] and [`scan_reeb`].
pub const SCAN_HEIGHT: i64 = 3;

/// Searches for `X` as in [`is_z_witness`] among the basis vectors and the
/// combinations (height ≤ 3) of a basis of the center of the nilradical.
/// Results are projectively normalized, deduplicated and sorted.
pub fn scan_z_standard(m: &MetricLieAlgebra) -> Result<Vec<Vector>, StandardError> {
    let l = m.algebra();
    l.jacobi_check().map_err(LieError::NotALieAlgebra)?;
    let n = m.dim();
    let mut candidates: Vec<Vector> = (0..n).map(|i| vector::unit(n, i)).collect();
    if l.is_solvable()? {
        let nil = l.nilradical()?;
        let nil_alg = l.restrict(nil.basis())?;
        let z = nil_alg.center();
        let zb: Vec<Vector> = z.basis().iter().map(|c| vector::combine(n, c, nil.basis())).collect();
        candidates.extend(projective_combinations(n, &zb, &height_bounded(SCAN_HEIGHT)));
    }
    let mut seen: Vec<Vector> = candidates.iter().filter_map(|c| normalize_projective(c)).collect();
    seen.sort();
    seen.dedup();
    let mut out = Vec::new();
    for x in seen {
        if is_z_witness(m, &x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Searches `ξ` among unit vectors of the ideal spanned by its basis vectors
/// and by height-bounded combinations of a basis of `z(g)`, keeping those that
/// pass every rank-one Sasaki condition.
pub fn scan_reeb(dec: &Decomposition) -> Result<Vec<Vector>, StandardError> {
    let frame = RankOneFrame::new(dec)?;
    let k = frame.ideal_dim();
    let mut cands: Vec<Vector> = (0..k).map(|i| vector::unit(k, i)).collect();
    let z = frame.ideal.algebra().center();
    let coeffs = height_bounded(SCAN_HEIGHT);
    cands.extend(projective_combinations(k, z.basis(), &coeffs));
    let mut out = Vec::new();
    for c in cands {
        let norm = frame.ideal.inner(&c, &c);
        // Unit rescaling needs g(c,c) to be a positive rational square.
        let Some(s) = rational_sqrt(&norm) else { continue };
        for sign in [Scalar::one(), -Scalar::one()] {
            let xi = frame.to_ambient(&vector::scale(&(&sign / &s), &c));
            if out.contains(&xi) {
                continue;
            }
            if rank_one_report(dec, &frame, &xi)?.all_pass() {
                out.push(xi);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if !x.is_positive() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Scalar::from_big(n, d)
    } else {
        None
    }
}

/// `g ⋊_χ a`: brackets on the ideal unchanged, `[X, u] = χ(X)u` for `X ∈ a`,
/// `a` abelian; the metric matrix is kept. `chi[s]` is an ambient matrix for
/// the `s`-th basis vector of `a`. The decomposition need not be orthogonal.
pub fn isometrize(dec: &Decomposition, chi: &[Matrix]) -> Result<MetricLieAlgebra, StandardError> {
    dec.check_semidirect()?;
    let n = dec.dim();
    let ra = dec.abelian.len();
    if chi.len() != ra {
        return Err(StandardError::ChiCount { expected: ra, found: chi.len() });
    }
    let l = dec.algebra();
    let ideal = dec.ideal_space();
    let ideal_alg = dec.ideal_algebra()?;
    let basis = Matrix::from_columns(n, &dec.ideal);
    for (s, c) in chi.iter().enumerate() {
        if dec.abelian.iter().any(|a| !vector::is_zero(&c.mul_vec(a))) {
            return Err(StandardError::ChiNonzeroOnA { index: s });
        }
        let mut restricted = Vec::with_capacity(dec.ideal.len());
        for u in &dec.ideal {
            let img = c.mul_vec(u);
            if !ideal.contains(&img) {
                return Err(StandardError::NotADerivation { index: s });
            }
            restricted.push(basis.solve(&img).expect("image lies in the ideal").0);
        }
        let cm = Matrix::from_columns(dec.ideal.len(), &restricted);
        if !ideal_alg.is_derivation(&cm) {
            return Err(StandardError::NotADerivation { index: s });
        }
        let ad = l.ad(&dec.abelian[s]);
        if dec.metric.sym_anti_split(c).0 != dec.metric.sym_anti_split(&ad).0 {
            return Err(StandardError::SymmetricPartMismatch { index: s });
        }
    }
    for c in chi {
        for y in &dec.abelian {
            if !c.commutator(&l.ad(y)).is_zero() {
                return Err(StandardError::CommutatorNonzero);
            }
        }
    }
    for a in chi {
        for b in chi {
            if !a.commutator(b).is_zero() {
                return Err(StandardError::NotAHomomorphism);
            }
        }
    }
    // Build the new algebra in the adapted basis, then return to the standard one.
    let p = dec.adapted_basis();
    let p_inv = p.inverse().map_err(|_| StandardError::NotComplementary)?;
    let k = dec.ideal.len();
    let mut entries = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for (t, c) in p_inv.mul_vec(&l.bracket(&dec.ideal[i], &dec.ideal[j])).into_iter().enumerate() {
                entries.push((i, j, t, c));
            }
        }
        for s in 0..ra {
            // [u_i, X_s] = −χ(X_s) u_i
            for (t, c) in p_inv.mul_vec(&chi[s].mul_vec(&dec.ideal[i])).into_iter().enumerate() {
                entries.push((i, k + s, t, -c));
            }
        }
    }
    let adapted = LieAlgebra::from_constants(n, &entries)?;
    let new = adapted.change_basis(&p_inv)?;
    Ok(MetricLieAlgebra::new(new, dec.metric.metric().clone())?)
}

/// Variant with `χ(X) = (ad X)ˢ`, valid when each `(ad X)*` is a derivation of
/// `g̃` vanishing on `a` and `[(ad X)*, ad Y] = 0`.
pub fn isometrize_symmetric(dec: &Decomposition) -> Result<MetricLieAlgebra, StandardError> {
    let l = dec.algebra();
    let mut chi = Vec::with_capacity(dec.abelian.len());
    for (s, x) in dec.abelian.iter().enumerate() {
        let ad = l.ad(x);
        let star = dec.metric.adjoint(&ad);
        if !l.is_derivation(&star) {
            return Err(StandardError::NotADerivation { index: s });
        }
        if dec.abelian.iter().any(|a| !vector::is_zero(&star.mul_vec(a))) {
            return Err(StandardError::ChiNonzeroOnA { index: s });
        }
        if dec.abelian.iter().any(|y| !star.commutator(&l.ad(y)).is_zero()) {
            return Err(StandardError::CommutatorNonzero);
        }
        chi.push(dec.metric.sym_anti_split(&ad).0);
    }
    isometrize(dec, &chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::check_sasaki;
    use crate::salamon::{parse_salamon, print_salamon, Bindings};
    use crate::scalar::int;

    fn metric(s: &str, diag: &[i64]) -> MetricLieAlgebra {
        let l = parse_salamon(s, &Bindings::new()).unwrap();
        MetricLieAlgebra::new(l, Matrix::diagonal(&vector::from_ints(diag))).unwrap()
    }

    fn ex43p() -> MetricLieAlgebra {
        metric("(0,−2e^{12}−2e^{34},−e^{13},−e^{14},2e^{12}+2e^{34})", &[-1, -1, -1, -1, 1])
    }

    fn ex43p_dec() -> Decomposition {
        let u = |i| vector::unit(5, i);
        Decomposition::rank_one(ex43p(), vec![u(1), u(2), u(3), u(4)], u(0))
    }

    #[test]
    fn ex43_prime_standard_not_iwasawa() {
        let dec = ex43p_dec();
        assert_eq!(check_standard(&dec), Ok(()));
        assert_eq!(check_pseudo_iwasawa(&dec), Ok(false));
    }

    #[test]
    fn ex43_prime_rank_one_conditions() {
        let dec = ex43p_dec();
        let r = check_rank_one_sasaki(&dec, &vector::unit(5, 4)).unwrap();
        assert!(r.all_pass() && r.acg && r.b_norm && r.b_perp_xi);
        assert_eq!(r.b, vector::neg(&vector::unit(5, 1)));
        assert!(check_sasaki(&r.structure).unwrap().verdict);
        assert_eq!(check_z_standard(&dec, &vector::unit(5, 4)), Ok(true));
        assert_eq!(scan_reeb(&dec).unwrap(), vec![vector::neg(&vector::unit(5, 4)), vector::unit(5, 4)]);
    }

    #[test]
    fn ex43_prime_witness_e2() {
        let w = scan_z_standard(&ex43p()).unwrap();
        assert!(w.contains(&vector::unit(5, 1)));
        for x in &w {
            assert!(is_z_witness(&ex43p(), x).unwrap());
        }
    }

    #[test]
    fn euclidean_split_is_iwasawa() {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(3).unwrap(), Matrix::identity(3)).unwrap();
        let dec = Decomposition::rank_one(m.clone(), vec![vector::unit(3, 0), vector::unit(3, 1)], vector::unit(3, 2));
        assert_eq!(check_pseudo_iwasawa(&dec), Ok(true));
        assert!(scan_z_standard(&m).unwrap().is_empty());
    }

    #[test]
    fn abelian_d_zero_fails_sasaki_d() {
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(3).unwrap(), Matrix::identity(3)).unwrap();
        let dec = Decomposition::rank_one(m, vec![vector::unit(3, 0), vector::unit(3, 1)], vector::unit(3, 2));
        let r = check_rank_one_sasaki(&dec, &vector::unit(3, 0)).unwrap();
        assert!(!r.d_anti_b && !r.all_pass());
    }

    #[test]
    fn isometrize_ex43() {
        let m = metric("(0,−2e^{12}−2e^{34},−3e^{45}−e^{13}+3e^{24},3e^{35}−3e^{23}−e^{14},2e^{12}+2e^{34})", &[-1, -1, -1, -1, 1]);
        let u = |i| vector::unit(5, i);
        let dec = Decomposition::new(m.clone(), vec![u(0), vector::sub(&u(1), &u(4)), u(2), u(3)], vec![u(4)]);
        let chi = m.sym_anti_split(&m.algebra().ad(&u(4))).0;
        let out = isometrize(&dec, &[chi]).unwrap();
        assert_eq!(print_salamon(out.algebra()), print_salamon(ex43p().algebra()));
        assert_eq!(out.metric(), m.metric());
        assert_eq!(isometrize_symmetric(&dec).unwrap(), out);
        let bad = Matrix::identity(5).scale(&int(0));
        let mut wrong = bad.clone();
        wrong[(2, 2)] = int(1);
        assert!(matches!(
            isometrize(&dec, &[wrong]),
            Err(StandardError::SymmetricPartMismatch { .. } | StandardError::NotADerivation { .. })
        ));
    }

    #[test]
    fn ex43_audit() {
        let m = metric("(0,−2e^{12}−2e^{34},−3e^{45}−e^{13}+3e^{24},3e^{35}−3e^{23}−e^{14},2e^{12}+2e^{34})", &[-1, -1, -1, -1, 1]);
        let u = |i| vector::unit(5, i);
        let phi = Form::basis(5, &[0, 1]).add(&Form::basis(5, &[2, 3]));
        let a = AlmostContactData::from_fundamental_form(m.clone(), u(4), &phi).unwrap();
        let dec = Decomposition::rank_one(m, vec![u(1), u(2), u(3), u(4)], u(0));
        assert_eq!(check_standard(&dec), Err(StandardError::NotNilpotent));
        assert_eq!(no_pseudo_iwasawa_audit(&a, &dec), Ok(true));
    }
}
