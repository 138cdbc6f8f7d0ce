//! Verification harness: runs the full pipeline on every catalog variant.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use sasaki_core::contact::{check_sasaki, AlmostContactData};
use sasaki_core::forms::Form;
use sasaki_core::metric::{curvature, levi_civita, MetricLieAlgebra};
use sasaki_core::reduction::{construct_sasaki, extract_reduction};
use sasaki_core::salamon::{parse_salamon, parse_two_form, print_salamon};
use sasaki_core::scalar::int;
use sasaki_core::standard::{check_rank_one_sasaki, check_standard, check_z_standard, no_pseudo_iwasawa_audit, Decomposition};
use sasaki_core::Scalar;

use crate::catalog::{catalog, CatalogEntry, PhiSpec, Variant};

pub const SCHEMA: u32 = 1;

/// Per-variant outcome. `None` means not applicable or skipped because an
/// upstream check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub variant: Variant,
    pub salamon: String,
    pub jacobi: bool,
    pub standard: Option<bool>,
    pub metric_compatible: Option<bool>,
    pub torsion_free: Option<bool>,
    pub bianchi: Option<bool>,
    pub acms: Option<bool>,
    pub normal: Option<bool>,
    pub contact: Option<bool>,
    pub nabla_phi: Option<bool>,
    pub characterizations_agree: Option<bool>,
    pub reeb_nabla_xi: Option<bool>,
    pub reeb_killing: Option<bool>,
    pub reeb_contact: Option<bool>,
    pub reeb_curvature_xi: Option<bool>,
    pub reeb_ricci_xi: Option<bool>,
    pub rank_one: Option<bool>,
    pub rank_one_cross: Option<bool>,
    pub z_standard: Option<bool>,
    pub reduction_match: Option<bool>,
    pub roundtrip: Option<bool>,
    pub not_pseudo_iwasawa: Option<bool>,
    pub einstein: Option<bool>,
    pub findings: Vec<String>,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    fn new(entry: &CatalogEntry, variant: &Variant) -> Report {
        Report {
            id: entry.id.to_string(),
            variant: variant.clone(),
            salamon: String::new(),
            jacobi: false,
            standard: None,
            metric_compatible: None,
            torsion_free: None,
            bianchi: None,
            acms: None,
            normal: None,
            contact: None,
            nabla_phi: None,
            characterizations_agree: None,
            reeb_nabla_xi: None,
            reeb_killing: None,
            reeb_contact: None,
            reeb_curvature_xi: None,
            reeb_ricci_xi: None,
            rank_one: None,
            rank_one_cross: None,
            z_standard: None,
            reduction_match: None,
            roundtrip: None,
            not_pseudo_iwasawa: None,
            einstein: None,
            findings: Vec::new(),
            all_pass: false,
            wall_time_ms: None,
        }
    }

    /// `(name, value)` for every check, in field order.
    pub fn checks(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("jacobi", Some(self.jacobi)),
            ("standard", self.standard),
            ("metric_compatible", self.metric_compatible),
            ("torsion_free", self.torsion_free),
            ("bianchi", self.bianchi),
            ("acms", self.acms),
            ("normal", self.normal),
            ("contact", self.contact),
            ("nabla_phi", self.nabla_phi),
            ("characterizations_agree", self.characterizations_agree),
            ("reeb_nabla_xi", self.reeb_nabla_xi),
            ("reeb_killing", self.reeb_killing),
            ("reeb_contact", self.reeb_contact),
            ("reeb_curvature_xi", self.reeb_curvature_xi),
            ("reeb_ricci_xi", self.reeb_ricci_xi),
            ("rank_one", self.rank_one),
            ("rank_one_cross", self.rank_one_cross),
            ("z_standard", self.z_standard),
            ("reduction_match", self.reduction_match),
            ("roundtrip", self.roundtrip),
            ("not_pseudo_iwasawa", self.not_pseudo_iwasawa),
            ("einstein", self.einstein),
        ]
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks().into_iter().filter(|(_, v)| *v == Some(false)).map(|(n, _)| n).collect()
    }

    /// Whether the Sasaki structure itself verified (both characterizations).
    pub fn sasaki(&self) -> bool {
        self.jacobi && self.acms == Some(true) && self.normal == Some(true) && self.contact == Some(true) && self.nabla_phi == Some(true)
    }
}

/// Builds the metric Lie algebra and structure of an entry at a variant.
pub fn materialize(entry: &CatalogEntry, v: &Variant) -> Result<(MetricLieAlgebra, AlmostContactData), String> {
    let b = v.bindings();
    let l = parse_salamon(entry.salamon, &b).map_err(|e| e.to_string())?;
    let m = MetricLieAlgebra::new(l, entry.metric_matrix(v)).map_err(|e| e.to_string())?;
    let n = m.dim();
    let phi = match entry.phi {
        PhiSpec::Form(s) => parse_two_form(s, n, &b).map_err(|e| e.to_string())?,
        PhiSpec::HalfDEta => {
            let eta = Form::from_covector(&m.flat(&entry.xi_vector()));
            sasaki_core::forms::ce_d(m.algebra(), &eta).scale(&Scalar::new(1, 2))
        }
    };
    let a = AlmostContactData::from_fundamental_form(m.clone(), entry.xi_vector(), &phi).map_err(|e| e.to_string())?;
    Ok((m, a))
}

pub fn decomposition(entry: &CatalogEntry, m: &MetricLieAlgebra) -> Decomposition {
    Decomposition::rank_one(m.clone(), entry.ideal_basis(), entry.e0_vector())
}

pub fn verify_variant(entry: &CatalogEntry, v: &Variant) -> Report {
    let start = Instant::now();
    let mut r = Report::new(entry, v);
    run(entry, v, &mut r);
    r.all_pass = r.jacobi && r.checks().iter().all(|(_, x)| *x != Some(false));
    r.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    r
}

fn run(entry: &CatalogEntry, v: &Variant, r: &mut Report) {
    let expected = entry.expected_seed(v);
    if let Some(seed) = &expected {
        r.roundtrip = Some(match construct_sasaki(seed) {
            Ok(c) => match extract_reduction(&c.decomposition, &c.xi) {
                Ok(back) => back.seed == *seed,
                Err(e) => {
                    r.findings.push(format!("roundtrip extraction failed: {e}"));
                    false
                }
            },
            Err(e) => {
                r.findings.push(format!("expected seed does not construct: {e}"));
                false
            }
        });
    }
    let (m, a) = match materialize(entry, v) {
        Ok(x) => x,
        Err(e) => {
            r.findings.push(format!("could not build the entry: {e}"));
            return;
        }
    };
    r.salamon = print_salamon(m.algebra());
    if let Err(defect) = m.algebra().jacobi_check() {
        r.findings.push(format!("Jacobi fails: {defect}"));
        if let Some(Ok(c)) = expected.as_ref().map(construct_sasaki) {
            r.findings.push(format!("construction from the expected seed gives {}", print_salamon(c.algebra.algebra())));
        }
        return;
    }
    r.jacobi = true;

    match levi_civita(&m) {
        Ok(c) => {
            r.metric_compatible = Some(c.is_metric_compatible(&m));
            r.torsion_free = Some(c.is_torsion_free(m.algebra()));
            let curv = curvature(&m, &c);
            r.bianchi = Some(curv.first_bianchi());
            if let Some(k) = entry.einstein {
                r.einstein = Some(curv.is_einstein_with(&m, &int(k)));
            }
        }
        Err(e) => r.findings.push(format!("Levi-Civita connection: {e}")),
    }

    match check_sasaki(&a) {
        Ok(s) => {
            r.acms = Some(s.is_acms);
            if let Some(f) = s.acms_failure {
                r.findings.push(format!("almost contact metric condition fails: {f:?}"));
            }
            r.normal = Some(s.normal);
            r.contact = Some(s.contact);
            r.nabla_phi = Some(s.nabla_phi_identity);
            r.characterizations_agree = Some(s.characterizations_agree());
            r.reeb_nabla_xi = Some(s.reeb.nabla_xi);
            r.reeb_killing = Some(s.reeb.killing);
            r.reeb_contact = Some(s.reeb.contact);
            r.reeb_curvature_xi = Some(s.reeb.curvature_xi);
            r.reeb_ricci_xi = Some(s.reeb.ricci_xi);
        }
        Err(e) => {
            r.characterizations_agree = Some(false);
            r.findings.push(format!("check_sasaki: {e}"));
        }
    }

    let dec = decomposition(entry, &m);
    match check_standard(&dec) {
        Ok(()) => r.standard = Some(true),
        Err(e) => {
            r.standard = Some(false);
            r.findings.push(format!("printed decomposition is not standard: {e}"));
        }
    }
    if r.sasaki() {
        r.not_pseudo_iwasawa = no_pseudo_iwasawa_audit(&a, &dec).ok();
    }

    let xi = entry.xi_vector();
    match check_rank_one_sasaki(&dec, &xi) {
        Ok(rep) => {
            r.rank_one = Some(rep.all_pass());
            if let Ok(s) = check_sasaki(&rep.structure) {
                r.rank_one_cross = Some(s.verdict == rep.all_pass());
            }
            if rep.all_pass() && rep.structure.phi() != a.phi() {
                r.findings.push("φ assembled from the rank-one data differs from the given φ".into());
            }
        }
        Err(e) => {
            r.rank_one = Some(false);
            r.findings.push(format!("rank-one conditions: {e}"));
        }
    }
    if r.rank_one == Some(true) {
        r.z_standard = check_z_standard(&dec, &xi).ok();
    }

    if let Some(seed) = &expected {
        r.reduction_match = Some(match extract_reduction(&dec, &xi) {
            Ok(red) => {
                let b_ok = entry.expected_b().is_some_and(|b| b == red.b);
                if red.seed != *seed {
                    r.findings.push(format!("reduction differs: Ď = {:?}, h = {}", red.seed.d.to_rows(), red.h));
                }
                b_ok && red.seed == *seed
            }
            Err(e) => {
                r.findings.push(format!("reduction: {e}"));
                false
            }
        });
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    pub reports: Vec<Report>,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub filter: Option<String>,
    pub lambdas: Vec<Scalar>,
    /// Keep wall times in the reports.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { filter: None, lambdas: crate::catalog::default_lambdas(), timing: false }
    }
}

pub fn matching_entries(filter: Option<&str>) -> Result<Vec<&'static CatalogEntry>, glob::PatternError> {
    let pattern = filter.map(glob::Pattern::new).transpose()?;
    Ok(catalog().iter().filter(|e| pattern.as_ref().is_none_or(|p| p.matches(e.id))).collect())
}

/// Verifies every matching entry and variant, in catalog order.
pub fn verify_all(opts: &VerifyOptions) -> Result<Summary, glob::PatternError> {
    let mut reports = Vec::new();
    for e in matching_entries(opts.filter.as_deref())? {
        for v in e.variants(&opts.lambdas) {
            let mut r = verify_variant(e, &v);
            if !opts.timing {
                r.wall_time_ms = None;
            }
            reports.push(r);
        }
    }
    let passed = reports.iter().filter(|r| r.all_pass).count();
    Ok(Summary { schema: SCHEMA, total: reports.len(), passed, failed: reports.len() - passed, all_pass: passed == reports.len(), reports })
}

pub fn render_text(s: &Summary) -> String {
    let mut out = String::new();
    for r in &s.reports {
        let status = if r.all_pass { "PASS" } else { "FAIL" };
        let time = r.wall_time_ms.map(|t| format!(" ({t:.1} ms)")).unwrap_or_default();
        let _ = writeln!(out, "{status} {:<11} {}{time}", r.id, r.variant.label());
        let failed = r.failed_checks();
        if !failed.is_empty() {
            let _ = writeln!(out, "    failed: {}", failed.join(", "));
        }
        for f in &r.findings {
            let _ = writeln!(out, "    finding: {f}");
        }
    }
    let _ = writeln!(out, "{} of {} passed", s.passed, s.total);
    out
}
