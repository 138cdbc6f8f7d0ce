//! Built-in catalog: `ex4.3` and its isometric standard form `ex4.3prime`,
//! the three five-dimensional z-standard families and eleven seven-dimensional
//! families.

use serde::Serialize;

use sasaki_core::lie::LieAlgebra;
use sasaki_core::linalg::vector;
use sasaki_core::metric::MetricLieAlgebra;
use sasaki_core::reduction::{KahlerSeed, PseudoKahler};
use sasaki_core::salamon::{parse_two_form, Bindings, Symbol};
use sasaki_core::scalar::{int, q};
use sasaki_core::{Matrix, Scalar};

/// One diagonal metric entry; `S` is the `±` of the sign variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Slot {
    S,
    NegS,
    Tau,
    One,
    NegOne,
}

impl Slot {
    fn value(self, v: &Variant) -> Scalar {
        let s = int(v.sign);
        match self {
            Slot::S => s,
            Slot::NegS => -s,
            Slot::Tau => v.tau.clone().unwrap_or_else(Scalar::one),
            Slot::One => Scalar::one(),
            Slot::NegOne => -Scalar::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhiSpec {
    /// `Φ` as printed, in term notation.
    Form(&'static str),
    /// `2Φ = dη`.
    HalfDEta,
}

/// The pseudo-Kähler reduction an entry should produce. `ǧ` is abelian with
/// the standard `J` columns `Je_{2i−1} = e_{2i}` at sign `+`; `ω` is fixed
/// and `J = g⁻¹ω` follows the metric sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedReduction {
    pub metric: &'static [Slot],
    pub omega: &'static str,
    /// Rows of `Ď`; entries are rationals or `cλ`.
    pub d: &'static [&'static [&'static str]],
    pub h: i64,
    /// `b` as `(1-based index, sign)`.
    pub b: (usize, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub salamon: &'static str,
    pub metric: &'static [Slot],
    /// 1-based index of `ξ`.
    pub xi: usize,
    pub phi: PhiSpec,
    /// 1-based index of `e0`; the ideal is spanned by the other basis vectors.
    pub e0: usize,
    pub uses_tau: bool,
    pub uses_sign: bool,
    pub uses_lambda: bool,
    /// `ric = c·g` claimed.
    pub einstein: Option<i64>,
    pub expected: Option<ExpectedReduction>,
}

/// One point of an entry's symbol grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variant {
    #[serde(serialize_with = "opt_scalar")]
    pub tau: Option<Scalar>,
    pub sign: i64,
    #[serde(serialize_with = "opt_scalar")]
    pub lambda: Option<Scalar>,
}

fn opt_scalar<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_fraction_string()),
        None => s.serialize_none(),
    }
}

impl Variant {
    pub fn bindings(&self) -> Bindings {
        let mut b = Bindings::new();
        if let Some(t) = &self.tau {
            b.set(Symbol::Tau, t.clone());
        }
        if let Some(l) = &self.lambda {
            b.set(Symbol::Lambda, l.clone());
        }
        b
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(t) = &self.tau {
            parts.push(format!("τ={t}"));
        }
        parts.push(format!("sign={}", if self.sign > 0 { "+" } else { "−" }));
        if let Some(l) = &self.lambda {
            parts.push(format!("λ={l}"));
        }
        parts.join(" ")
    }
}

pub fn default_lambdas() -> Vec<Scalar> {
    vec![int(0), int(1), int(-1), q(1, 2), int(2)]
}

use Slot::{NegOne, NegS, One, Tau, S};

const DEFINITE4: &[Slot] = &[S, S, S, S, Tau, One, Tau];
const NEUTRAL4: &[Slot] = &[S, S, NegS, NegS, Tau, One, Tau];
const ZERO2: &[&[&str]] = &[&["0", "0"], &["0", "0"]];
const ID2: &[&[&str]] = &[&["1", "0"], &["0", "1"]];
const ZERO4: &[&[&str]] = &[&["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]];
const HALF4: &[&[&str]] = &[&["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]];
const ID4: &[&[&str]] = &[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]];
const ROW9_D: &[&[&str]] =
    &[&["1/2", "2λ", "-1/2", "-λ"], &["-2λ", "1/2", "λ", "-1/2"], &["1/2", "λ", "-1/2", "0"], &["-λ", "1/2", "0", "-1/2"]];
const ROW10_D: &[&[&str]] =
    &[&["1/2", "2λ", "-3/2", "-λ"], &["-2λ", "1/2", "λ", "-3/2"], &["-1/2", "λ", "-1/2", "0"], &["-λ", "-1/2", "0", "-1/2"]];
const ROW11_D: &[&[&str]] =
    &[&["3/2", "2λ", "1/2", "-λ"], &["-2λ", "3/2", "λ", "1/2"], &["3/2", "λ", "1/2", "0"], &["-λ", "3/2", "0", "1/2"]];

const fn table(
    id: &'static str,
    salamon: &'static str,
    metric: &'static [Slot],
    lambda: bool,
    omega: &'static str,
    d: &'static [&'static [&'static str]],
    h: i64,
) -> CatalogEntry {
    CatalogEntry {
        id,
        salamon,
        metric,
        xi: 6,
        phi: PhiSpec::HalfDEta,
        e0: 7,
        uses_tau: true,
        uses_sign: true,
        uses_lambda: lambda,
        einstein: None,
        expected: Some(ExpectedReduction { metric: metric.split_at(4).0, omega, d, h, b: (5, 1) }),
    }
}

const fn dim5(id: &'static str, salamon: &'static str, d: &'static [&'static [&'static str]], h: i64) -> CatalogEntry {
    const METRIC: &[Slot] = &[S, S, Tau, One, Tau];
    CatalogEntry {
        id,
        salamon,
        metric: METRIC,
        xi: 4,
        phi: PhiSpec::Form("−e^{12}−τe^{35}"),
        e0: 5,
        uses_tau: true,
        uses_sign: true,
        uses_lambda: false,
        einstein: None,
        expected: Some(ExpectedReduction { metric: &[S, S], omega: "−e^{12}", d, h, b: (3, 1) }),
    }
}

const EX43_METRIC: &[Slot] = &[NegOne, NegOne, NegOne, NegOne, One];

const DEF_OMEGA: &str = "−e^{12}−e^{34}";
const NEU_OMEGA: &str = "−e^{12}+e^{34}";

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "ex4.3",
        salamon: "(0,−2e^{12}−2e^{34},−3e^{45}−e^{13}+3e^{24},3e^{35}−3e^{23}−e^{14},2e^{12}+2e^{34})",
        metric: EX43_METRIC,
        xi: 5,
        phi: PhiSpec::Form("e^{12}+e^{34}"),
        e0: 1,
        uses_tau: false,
        uses_sign: false,
        uses_lambda: false,
        einstein: Some(4),
        expected: None,
    },
    CatalogEntry {
        id: "ex4.3prime",
        salamon: "(0,−2e^{12}−2e^{34},−e^{13},−e^{14},2e^{12}+2e^{34})",
        metric: EX43_METRIC,
        xi: 5,
        phi: PhiSpec::Form("e^{12}+e^{34}"),
        e0: 1,
        uses_tau: false,
        uses_sign: false,
        uses_lambda: false,
        einstein: None,
        expected: Some(ExpectedReduction { metric: &[NegOne, NegOne], omega: "e^{12}", d: ID2, h: 2, b: (2, -1) }),
    },
    dim5("dim5.1", "(0,0,0,−2e^{12}−2τe^{35},0)", ZERO2, 0),
    dim5("dim5.2", "(0,0,2τe^{12}+2e^{35},−2e^{12}−2τe^{35},0)", ZERO2, 2),
    dim5("dim5.3", "(e^{15},e^{25},2τe^{12}+2e^{35},−2e^{12}−2τe^{35},0)", ID2, 2),
    table("table1.1", "(0,0,0,0,0,−2e^{12}−2e^{34}−2τe^{57},0)", DEFINITE4, false, DEF_OMEGA, ZERO4, 0),
    table("table1.2", "(0,0,0,0,2τe^{12}+2τe^{34}+2e^{57},−2e^{12}−2e^{34}−2τe^{57},0)", DEFINITE4, false, DEF_OMEGA, ZERO4, 2),
    table("table1.3", "(0,0,e^{37},e^{47},2τe^{12}+2τe^{34}+2e^{57},−2e^{12}−2e^{34}−2τe^{57},0)", DEFINITE4, false, DEF_OMEGA, HALF4, 2),
    table("table1.4", "(e^{17},e^{27},e^{37},e^{47},2τe^{12}+2τe^{34}+2e^{57},−2e^{12}−2e^{34}−2τe^{57},0)", DEFINITE4, false, DEF_OMEGA, ID4, 2),
    table("table1.5", "(0,0,0,0,0,−2e^{12}+2e^{34}−2τe^{57},0)", NEUTRAL4, false, NEU_OMEGA, ZERO4, 0),
    table("table1.6", "(0,0,0,0,2τe^{12}−2τe^{34}+2e^{57},−2e^{12}+2e^{34}−2τe^{57},0)", NEUTRAL4, false, NEU_OMEGA, ZERO4, 2),
    table("table1.7", "(0,0,e^{37},e^{47},2τe^{12}−2τe^{34}+2e^{57},−2e^{12}+2e^{34}−2τe^{57},0)", NEUTRAL4, false, NEU_OMEGA, HALF4, 2),
    table("table1.8", "(e^{17},e^{27},e^{37},e^{47},2τe^{12}−2τe^{34}+2e^{57},−2e^{12}+2e^{34}−2τe^{57},0)", NEUTRAL4, false, NEU_OMEGA, ID4, 2),
    table(
        "table1.9",
        "(1/2e^{17}+2λe^{27}−1/2e^{37}−λe^{47},−2λe^{17}+1/2e^{27}+λe^{37}−1/2e^{47},1/2e^{17}+λe^{27}−1/2e^{37},−λe^{17}+1/2e^{27}−1/2e^{47},−τe^{12}+τe^{14}−τe^{23}−τe^{34},−2e^{12}+2e^{34}−2τe^{57},0)",
        NEUTRAL4,
        true,
        NEU_OMEGA,
        ROW9_D,
        0,
    ),
    table(
        "table1.10",
        "(1/2e^{17}+2λe^{27}−3/2e^{37}−λe^{47},−2λe^{17}+1/2e^{27}+λe^{37}−3/2e^{47},−1/2e^{17}+λe^{27}−1/2e^{37},−λe^{17}−1/2e^{27}−1/2e^{47},−τe^{12}+τe^{14}−τe^{23}−τe^{34}+2e^{57},−2e^{12}+2e^{34}−2τe^{57},0)",
        NEUTRAL4,
        true,
        NEU_OMEGA,
        ROW10_D,
        2,
    ),
    table(
        "table1.11",
        "(3/2e^{17}+2λe^{27}+1/2e^{37}−λe^{47},−2λe^{17}+3/2e^{27}+λe^{37}+1/2e^{47},3/2e^{17}+λe^{27}+1/2e^{37},−λe^{17}+3/2e^{27}+1/2e^{47},−3τe^{12}+3τe^{14}−τe^{23}+τe^{34}+2e^{57},−2e^{12}+2e^{34}−2τe^{57},0)",
        NEUTRAL4,
        true,
        NEU_OMEGA,
        ROW11_D,
        2,
    ),
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn find(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

/// Evaluates `"3/2"`, `"λ"`, `"-2λ"` at the given `λ`.
fn entry_value(s: &str, lambda: &Scalar) -> Scalar {
    match s.strip_suffix('λ') {
        Some(prefix) => {
            let c = match prefix {
                "" => Scalar::one(),
                "-" => -Scalar::one(),
                p => p.parse().expect("catalog coefficient"),
            };
            c * lambda
        }
        None => s.parse().expect("catalog entry"),
    }
}

impl CatalogEntry {
    /// The symbol grid in deterministic order: `τ ∈ {1, −1}`, then sign, then `λ`.
    pub fn variants(&self, lambdas: &[Scalar]) -> Vec<Variant> {
        let taus: Vec<Option<Scalar>> = if self.uses_tau { vec![Some(int(1)), Some(int(-1))] } else { vec![None] };
        let signs: &[i64] = if self.uses_sign { &[1, -1] } else { &[1] };
        let ls: Vec<Option<Scalar>> = if self.uses_lambda { lambdas.iter().cloned().map(Some).collect() } else { vec![None] };
        let mut out = Vec::new();
        for t in &taus {
            for &s in signs {
                for l in &ls {
                    out.push(Variant { tau: t.clone(), sign: s, lambda: l.clone() });
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    pub fn metric_matrix(&self, v: &Variant) -> Matrix {
        Matrix::diagonal(&self.metric.iter().map(|s| s.value(v)).collect::<Vec<_>>())
    }

    pub fn xi_vector(&self) -> Vec<Scalar> {
        vector::unit(self.dim(), self.xi - 1)
    }

    pub fn e0_vector(&self) -> Vec<Scalar> {
        vector::unit(self.dim(), self.e0 - 1)
    }

    pub fn ideal_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).filter(|&i| i != self.e0 - 1).map(|i| vector::unit(self.dim(), i)).collect()
    }

    /// The seed the reduction should return for this variant.
    pub fn expected_seed(&self, v: &Variant) -> Option<KahlerSeed> {
        let e = self.expected?;
        let k = e.metric.len();
        let g = Matrix::diagonal(&e.metric.iter().map(|s| s.value(v)).collect::<Vec<_>>());
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(k).ok()?, g).ok()?;
        let omega = parse_two_form(e.omega, k, &Bindings::new()).ok()?;
        let j = m.metric_inverse().mul(&omega.to_matrix());
        let lambda = v.lambda.clone().unwrap_or_else(Scalar::zero);
        let d = Matrix::from_fn(k, k, |r, c| entry_value(e.d[r][c], &lambda));
        let tau = match &v.tau {
            Some(t) => t.clone(),
            None => self.metric_matrix(v)[(self.e0 - 1, self.e0 - 1)].clone(),
        };
        Some(KahlerSeed::new(PseudoKahler::new(m, j, omega), d, int(e.h), tau))
    }

    pub fn expected_b(&self) -> Option<Vec<Scalar>> {
        let (i, s) = self.expected?.b;
        Some(vector::scale(&int(s), &vector::unit(self.dim(), i - 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sasaki_core::reduction::seed_check;

    #[test]
    fn sixteen_entries_with_unique_ids() {
        assert_eq!(CATALOG.len(), 16);
        let mut ids: Vec<_> = CATALOG.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 16);
    }

    #[test]
    fn variant_counts() {
        let l = default_lambdas();
        assert_eq!(find("ex4.3").unwrap().variants(&l).len(), 1);
        assert_eq!(find("dim5.2").unwrap().variants(&l).len(), 4);
        assert_eq!(find("table1.10").unwrap().variants(&l).len(), 20);
    }

    #[test]
    fn every_expected_seed_satisfies_the_hypotheses() {
        for e in CATALOG {
            for v in e.variants(&default_lambdas()) {
                if let Some(s) = e.expected_seed(&v) {
                    assert_eq!(seed_check(&s), Ok(()), "{} {}", e.id, v.label());
                }
            }
        }
    }

    #[test]
    fn lambda_entries() {
        assert_eq!(entry_value("-2λ", &q(1, 2)), int(-1));
        assert_eq!(entry_value("λ", &int(3)), int(3));
        assert_eq!(entry_value("-3/2", &int(3)), q(-3, 2));
    }
}
