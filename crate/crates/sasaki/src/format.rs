//! JSON file formats. Indices are 1-based and scalars are written as
//! `"p/q"` strings (plain integers are accepted on input).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use sasaki_core::forms::Form;
use sasaki_core::lie::LieAlgebra;
use sasaki_core::linalg::vector;
use sasaki_core::metric::MetricLieAlgebra;
use sasaki_core::reduction::{KahlerSeed, PseudoKahler};
use sasaki_core::salamon::{parse_salamon, parse_two_form, print_salamon, Bindings, SalamonError, Symbol};
use sasaki_core::standard::Decomposition;
use sasaki_core::{Matrix, Scalar, Vector};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid scalar `{0}`")]
    Scalar(String),
    #[error("unknown symbol `{0}` in bindings")]
    UnknownSymbol(String),
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Salamon(#[from] SalamonError),
    #[error(transparent)]
    Lie(#[from] sasaki_core::lie::LieError),
    #[error(transparent)]
    Metric(#[from] sasaki_core::metric::MetricError),
}

/// A scalar as it appears in JSON: an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    pub fn to_scalar(&self) -> Result<Scalar, FormatError> {
        match self {
            ScalarRepr::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarRepr::Text(s) => s.trim().parse().map_err(|_| FormatError::Scalar(s.clone())),
        }
    }
}

impl From<&Scalar> for ScalarRepr {
    /// Integers that fit `i64` stay numbers; everything else is `"p/q"` text.
    fn from(s: &Scalar) -> Self {
        match s.to_string().parse::<i64>() {
            Ok(n) => ScalarRepr::Int(n),
            Err(_) => ScalarRepr::Text(s.to_fraction_string()),
        }
    }
}

fn scalars(v: &[ScalarRepr]) -> Result<Vector, FormatError> {
    v.iter().map(ScalarRepr::to_scalar).collect()
}

fn matrix_from(rows: &[Vec<ScalarRepr>]) -> Result<Matrix, FormatError> {
    let rows: Vec<Vector> = rows.iter().map(|r| scalars(r)).collect::<Result<_, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(FormatError::Invalid("matrix must be square".into()));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn matrix_repr(m: &Matrix) -> Vec<Vec<ScalarRepr>> {
    m.to_rows().iter().map(|r| r.iter().map(ScalarRepr::from).collect()).collect()
}

pub fn vector_repr(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(ScalarRepr::from).collect()
}

/// A metric: the diagonal or the full matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricRepr {
    Full(Vec<Vec<ScalarRepr>>),
    Diagonal(Vec<ScalarRepr>),
}

impl MetricRepr {
    pub fn to_matrix(&self) -> Result<Matrix, FormatError> {
        match self {
            MetricRepr::Diagonal(d) => Ok(Matrix::diagonal(&scalars(d)?)),
            MetricRepr::Full(rows) => matrix_from(rows),
        }
    }
}

/// A vector: a 1-based basis index or explicit coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Index(usize),
    Coords(Vec<ScalarRepr>),
}

impl VectorSpec {
    pub fn to_vector(&self, dim: usize) -> Result<Vector, FormatError> {
        match self {
            VectorSpec::Index(i) if (1..=dim).contains(i) => Ok(vector::unit(dim, i - 1)),
            VectorSpec::Index(i) => Err(FormatError::Invalid(format!("basis index {i} out of range 1..={dim}"))),
            VectorSpec::Coords(c) if c.len() == dim => scalars(c),
            VectorSpec::Coords(c) => Err(FormatError::Invalid(format!("vector has {} entries, expected {dim}", c.len()))),
        }
    }

    /// Parses `3` or `[0,1,0,−1]`.
    pub fn parse(s: &str) -> Result<VectorSpec, FormatError> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords = inner.split(',').map(|p| ScalarRepr::Text(p.trim().to_string())).collect();
            return Ok(VectorSpec::Coords(coords));
        }
        t.parse().map(VectorSpec::Index).map_err(|_| FormatError::Invalid(format!("expected an index or [..] vector, got `{s}`")))
    }
}

/// `{"ideal": [...], "abelian": [...], "e0": v, "tau": ±1, "xi": v}`; `e0` is
/// shorthand for a one-element `abelian`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSpec {
    pub ideal: Vec<VectorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub abelian: Vec<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e0: Option<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<ScalarRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<VectorSpec>,
}

impl DecompositionSpec {
    pub fn build(&self, metric: &MetricLieAlgebra) -> Result<Decomposition, FormatError> {
        let n = metric.dim();
        let ideal = self.ideal.iter().map(|v| v.to_vector(n)).collect::<Result<Vec<_>, _>>()?;
        let mut abelian = self.abelian.iter().map(|v| v.to_vector(n)).collect::<Result<Vec<_>, _>>()?;
        if let Some(e0) = &self.e0 {
            abelian.push(e0.to_vector(n)?);
        }
        let dec = Decomposition::new(metric.clone(), ideal, abelian);
        if let (Some(t), [e0]) = (&self.tau, dec.abelian.as_slice()) {
            if metric.inner(e0, e0) != t.to_scalar()? {
                return Err(FormatError::Invalid("declared tau differs from g(e0, e0)".into()));
            }
        }
        Ok(dec)
    }
}

/// A metric Lie algebra with optional almost contact data and decomposition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub salamon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// `[i, j, k, c]` meaning `[e_i, e_j] = c e_k + …`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<(usize, usize, usize, ScalarRepr)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bind: BTreeMap<String, ScalarRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<VectorSpec>,
    /// Fundamental 2-form in Salamon term notation.
    #[serde(default, rename = "Phi", skip_serializing_if = "Option::is_none")]
    pub fundamental_form: Option<String>,
    /// `φ` as a matrix, an alternative to `Phi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<ScalarRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSpec>,
}

pub fn parse_bindings(pairs: &BTreeMap<String, ScalarRepr>) -> Result<Bindings, FormatError> {
    let mut b = Bindings::new();
    for (k, v) in pairs {
        let sym = Symbol::from_name(k).ok_or_else(|| FormatError::UnknownSymbol(k.clone()))?;
        b.set(sym, v.to_scalar()?);
    }
    Ok(b)
}

/// Parses `τ=1`, `lambda=1/2` and similar command-line bindings.
pub fn parse_binding_arg(s: &str) -> Result<(String, ScalarRepr), FormatError> {
    let (k, v) = s.split_once('=').ok_or_else(|| FormatError::Invalid(format!("expected NAME=VALUE, got `{s}`")))?;
    Ok((k.trim().to_string(), ScalarRepr::Text(v.trim().to_string())))
}

impl AlgebraFile {
    /// Raw Salamon text or a JSON object.
    pub fn from_text(text: &str) -> Result<AlgebraFile, FormatError> {
        let t = text.trim();
        if t.starts_with('{') {
            Ok(serde_json::from_str(t)?)
        } else {
            Ok(AlgebraFile { salamon: Some(t.to_string()), ..Default::default() })
        }
    }

    pub fn bindings(&self) -> Result<Bindings, FormatError> {
        parse_bindings(&self.bind)
    }

    pub fn algebra(&self) -> Result<LieAlgebra, FormatError> {
        let b = self.bindings()?;
        match (&self.salamon, &self.brackets) {
            (Some(s), _) => Ok(parse_salamon(s, &b)?),
            (None, Some(br)) => {
                let n = self.dim.ok_or(FormatError::Missing("dim"))?;
                let mut entries = Vec::with_capacity(br.len());
                for (i, j, k, c) in br {
                    if [*i, *j, *k].iter().any(|&x| x == 0 || x > n) {
                        return Err(FormatError::Invalid(format!("bracket index out of range in [{i}, {j}, {k}]")));
                    }
                    entries.push((i - 1, j - 1, k - 1, c.to_scalar()?));
                }
                Ok(LieAlgebra::from_constants(n, &entries)?)
            }
            (None, None) => Err(FormatError::Missing("salamon or brackets")),
        }
    }

    pub fn metric_algebra(&self) -> Result<MetricLieAlgebra, FormatError> {
        let l = self.algebra()?;
        let g = self.metric.as_ref().ok_or(FormatError::Missing("metric"))?.to_matrix()?;
        Ok(MetricLieAlgebra::new(l, g)?)
    }

    /// The almost contact structure from `xi` and `Phi` (or `phi`).
    pub fn structure(&self) -> Result<sasaki_core::contact::AlmostContactData, FormatError> {
        use sasaki_core::contact::AlmostContactData;
        let m = self.metric_algebra()?;
        let n = m.dim();
        let xi = self.xi.as_ref().ok_or(FormatError::Missing("xi"))?.to_vector(n)?;
        let invalid = |e: sasaki_core::contact::ContactError| FormatError::Invalid(e.to_string());
        if let Some(f) = &self.fundamental_form {
            let form = parse_two_form(f, n, &self.bindings()?)?;
            AlmostContactData::from_fundamental_form(m, xi, &form).map_err(invalid)
        } else if let Some(p) = &self.phi {
            let eta = m.flat(&xi);
            AlmostContactData::new(m, matrix_from(p)?, xi, eta).map_err(invalid)
        } else {
            Err(FormatError::Missing("Phi or phi"))
        }
    }

    /// Describes a metric Lie algebra in canonical form.
    pub fn describe(m: &MetricLieAlgebra) -> AlgebraFile {
        AlgebraFile { salamon: Some(print_salamon(m.algebra())), metric: Some(metric_repr(m.metric())), ..Default::default() }
    }
}

/// Diagonal form when the metric is diagonal.
pub fn metric_repr(g: &Matrix) -> MetricRepr {
    let n = g.rows();
    let diagonal = (0..n).all(|r| (0..n).all(|c| r == c || g[(r, c)].is_zero()));
    if diagonal {
        MetricRepr::Diagonal((0..n).map(|i| ScalarRepr::from(&g[(i, i)])).collect())
    } else {
        MetricRepr::Full(matrix_repr(g))
    }
}

/// `{"dim", "brackets", "metric", "J", "omega", "D", "h", "tau"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, ScalarRepr)>,
    pub metric: MetricRepr,
    #[serde(rename = "J")]
    pub j: Vec<Vec<ScalarRepr>>,
    /// Salamon term notation; derived from `J` and the metric when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<ScalarRepr>>,
    pub h: ScalarRepr,
    pub tau: ScalarRepr,
}

impl SeedFile {
    pub fn to_seed(&self) -> Result<KahlerSeed, FormatError> {
        let file = AlgebraFile {
            dim: Some(self.dim),
            brackets: Some(self.brackets.clone()),
            metric: Some(self.metric.clone()),
            ..Default::default()
        };
        let m = file.metric_algebra()?;
        let j = matrix_from(&self.j)?;
        let kahler = match &self.omega {
            Some(s) => PseudoKahler::new(m, j, parse_two_form(s, self.dim, &Bindings::new())?),
            None => PseudoKahler::from_complex_structure(m, j),
        };
        Ok(KahlerSeed::new(kahler, matrix_from(&self.d)?, self.h.to_scalar()?, self.tau.to_scalar()?))
    }

    pub fn from_seed(seed: &KahlerSeed) -> SeedFile {
        let m = seed.metric();
        SeedFile {
            dim: m.dim(),
            brackets: m.algebra().constants().iter().map(|(i, j, k, c)| (i + 1, j + 1, k + 1, ScalarRepr::from(c))).collect(),
            metric: metric_repr(m.metric()),
            j: matrix_repr(&seed.kahler.j),
            omega: Some(form_text(&seed.kahler.omega)),
            d: matrix_repr(&seed.d),
            h: ScalarRepr::from(&seed.h),
            tau: ScalarRepr::from(&seed.tau),
        }
    }
}

/// A 2-form in the same notation the parser reads.
pub fn form_text(f: &Form) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sasaki_core::scalar::{int, q};

    #[test]
    fn scalar_repr_accepts_ints_and_fractions() {
        let v: Vec<ScalarRepr> = serde_json::from_str(r#"[3, "-1/2", "−2"]"#).unwrap();
        assert_eq!(scalars(&v).unwrap(), vec![int(3), q(-1, 2), int(-2)]);
        assert_eq!(serde_json::to_string(&ScalarRepr::from(&int(-2))).unwrap(), "-2");
        assert_eq!(serde_json::to_string(&ScalarRepr::from(&q(3, 2))).unwrap(), r#""3/2""#);
    }

    #[test]
    fn algebra_file_from_salamon_text_and_json() {
        let a = AlgebraFile::from_text("(0,0,e^{12})").unwrap();
        assert_eq!(print_salamon(&a.algebra().unwrap()), "(0,0,e^{12})");
        let j = r#"{"dim": 3, "brackets": [[1, 2, 3, "-1"]], "metric": [1, 1, 1], "xi": 3, "Phi": "e^{12}"}"#;
        let b = AlgebraFile::from_text(j).unwrap();
        assert_eq!(b.algebra().unwrap(), a.algebra().unwrap());
        let s = b.structure().unwrap();
        assert_eq!(s.xi(), &vector::unit(3, 2));
    }

    #[test]
    fn bindings_resolve_symbols() {
        let j = r#"{"salamon": "(0,0,τe^{12})", "bind": {"tau": -1}}"#;
        let a = AlgebraFile::from_text(j).unwrap();
        assert_eq!(print_salamon(&a.algebra().unwrap()), "(0,0,−e^{12})");
        let bad = AlgebraFile::from_text(r#"{"salamon": "(0)", "bind": {"mu": 1}}"#).unwrap();
        assert!(matches!(bad.algebra(), Err(FormatError::UnknownSymbol(_))));
    }

    #[test]
    fn seed_file_roundtrip() {
        let text = r#"{"dim": 2, "metric": [1, 1], "J": [[0, -1], [1, 0]], "D": [[1, 0], [0, 1]], "h": 2, "tau": 1}"#;
        let f: SeedFile = serde_json::from_str(text).unwrap();
        let seed = f.to_seed().unwrap();
        assert_eq!(seed.kahler.omega, Form::basis(2, &[0, 1]).neg());
        let back = SeedFile::from_seed(&seed).to_seed().unwrap();
        assert_eq!(back, seed);
    }

    #[test]
    fn vector_spec_parsing() {
        assert_eq!(VectorSpec::parse("2").unwrap().to_vector(3).unwrap(), vector::unit(3, 1));
        assert_eq!(VectorSpec::parse("[0, 1/2, −1]").unwrap().to_vector(3).unwrap(), vec![int(0), q(1, 2), int(-1)]);
        assert!(VectorSpec::parse("4").unwrap().to_vector(3).is_err());
    }
}
