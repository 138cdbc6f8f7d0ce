//! Salamon notation: a Lie algebra written as the tuple `(de^1, …, de^n)`.
//!
//! Grammar (whitespace is ignored everywhere):
//!
//! ```text
//! tuple  := "(" entry ("," entry)* ")"  |  entry ("," entry)*
//! entry  := "0" | term (sign term)*
//! term   := [sign] factor* "e^{" index index "}"
//! index  := digit                         (when written "e^{ij}")
//!         | number "," number             (when written "e^{i,j}")
//! factor := rational | symbol | "*" | "·"
//! symbol := "τ" | "tau" | "λ" | "lambda" | "h"
//! sign   := "+" | "-" | "−"
//! ```
//!
//! Symbols are resolved to rationals at evaluation time. `de^k = Σ a^k_ij e^{ij}`
//! corresponds to `[e_i, e_j] = −Σ_k a^k_ij e_k`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::forms::Form;
use crate::lie::{LieAlgebra, LieError, MAX_DIM};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Tau,
    Lambda,
    H,
}

impl Symbol {
    /// Accepts `τ`/`tau`, `λ`/`lambda`, `h`.
    pub fn from_name(name: &str) -> Option<Symbol> {
        match name {
            "τ" | "tau" => Some(Symbol::Tau),
            "λ" | "lambda" => Some(Symbol::Lambda),
            "h" => Some(Symbol::H),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Tau => "τ",
            Symbol::Lambda => "λ",
            Symbol::H => "h",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values for the symbols that may appear in an expression.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub tau: Option<Scalar>,
    pub lambda: Option<Scalar>,
    pub h: Option<Scalar>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn with(mut self, sym: Symbol, value: Scalar) -> Self {
        self.set(sym, value);
        self
    }

    pub fn set(&mut self, sym: Symbol, value: Scalar) {
        match sym {
            Symbol::Tau => self.tau = Some(value),
            Symbol::Lambda => self.lambda = Some(value),
            Symbol::H => self.h = Some(value),
        }
    }

    pub fn get(&self, sym: Symbol) -> Option<&Scalar> {
        match sym {
            Symbol::Tau => self.tau.as_ref(),
            Symbol::Lambda => self.lambda.as_ref(),
            Symbol::H => self.h.as_ref(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SalamonError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(Symbol),
    #[error("index {index} in entry {entry} is out of range 1..={dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// One term `coeff · symbols · e^{ij}` (indices 1-based, as written).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub symbols: Vec<Symbol>,
    pub i: usize,
    pub j: usize,
    /// Character offset of the term in the source.
    pub position: usize,
}

/// Parsed but unevaluated Salamon tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalamonExpr {
    pub entries: Vec<Vec<Term>>,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SalamonError> {
        Err(SalamonError::Parse { position: self.pos, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        (self.pos..).zip(s.chars()).all(|(p, c)| self.chars.get(p) == Some(&c))
    }

    fn number(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn symbol(&mut self) -> Option<Symbol> {
        for (name, sym) in [("lambda", Symbol::Lambda), ("tau", Symbol::Tau), ("λ", Symbol::Lambda), ("τ", Symbol::Tau)] {
            if self.starts_with(name) {
                self.pos += name.chars().count();
                return Some(sym);
            }
        }
        // `h` is a symbol only when not the start of something longer.
        if self.peek() == Some('h') {
            self.pos += 1;
            return Some(Symbol::H);
        }
        None
    }

    fn term(&mut self, negative: bool) -> Result<Term, SalamonError> {
        let position = self.pos;
        let mut coeff = if negative { -Scalar::one() } else { Scalar::one() };
        let mut symbols = Vec::new();
        loop {
            if self.starts_with("e^") {
                break;
            }
            if let Some(num) = self.number() {
                let mut lit = num;
                if self.eat('/') {
                    match self.number() {
                        Some(den) => {
                            lit.push('/');
                            lit.push_str(&den);
                        }
                        None => return self.err("expected denominator after `/`"),
                    }
                }
                match lit.parse::<Scalar>() {
                    Ok(v) => coeff = coeff * v,
                    Err(e) => return self.err(e.to_string()),
                }
                continue;
            }
            if let Some(s) = self.symbol() {
                symbols.push(s);
                continue;
            }
            if self.eat('*') || self.eat('·') {
                continue;
            }
            return match self.peek() {
                Some(c) => self.err(format!("unexpected `{c}` in term")),
                None => self.err("unexpected end of input in term"),
            };
        }
        self.pos += 2;
        if !self.eat('{') {
            return self.err("expected `{` after `e^`");
        }
        let (i, j) = self.indices()?;
        if !self.eat('}') {
            return self.err("expected `}`");
        }
        if i == j {
            return Err(SalamonError::Parse { position, message: format!("repeated index in e^{{{i}{j}}}") });
        }
        symbols.sort();
        Ok(Term { coeff, symbols, i, j, position })
    }

    fn indices(&mut self) -> Result<(usize, usize), SalamonError> {
        let first = match self.number() {
            Some(s) => s,
            None => return self.err("expected index digits"),
        };
        if self.eat(',') {
            let second = match self.number() {
                Some(s) => s,
                None => return self.err("expected second index"),
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|_| ());
            match (parse(&first), parse(&second)) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                _ => self.err("index too large"),
            }
        } else if first.len() == 2 {
            let d: Vec<usize> = first.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect();
            Ok((d[0], d[1]))
        } else {
            self.err("a 2-form needs exactly two indices; write e^{i,j} for indices above 9")
        }
    }

    fn entry(&mut self) -> Result<Vec<Term>, SalamonError> {
        let mut terms = Vec::new();
        // A lone "0" is the zero entry.
        let save = self.pos;
        if self.number().as_deref() == Some("0") && matches!(self.peek(), Some(',') | Some(')') | None) {
            return Ok(terms);
        }
        self.pos = save;
        let first_neg = self.sign().unwrap_or(false);
        terms.push(self.term(first_neg)?);
        while let Some(neg) = self.sign() {
            terms.push(self.term(neg)?);
        }
        Ok(terms)
    }

    fn tuple(&mut self) -> Result<SalamonExpr, SalamonError> {
        let paren = self.eat('(');
        let mut entries = Vec::new();
        loop {
            entries.push(self.entry()?);
            if !self.eat(',') {
                break;
            }
        }
        if paren && !self.eat(')') {
            return self.err("expected `,` or `)`");
        }
        if let Some(c) = self.peek() {
            return self.err(format!("trailing input starting at `{c}`"));
        }
        Ok(SalamonExpr { entries })
    }
}

impl SalamonExpr {
    /// Syntax only; symbols stay unresolved.
    pub fn parse(s: &str) -> Result<SalamonExpr, SalamonError> {
        let mut p = Parser { chars: s.chars().collect(), pos: 0 };
        p.tuple()
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Symbols used anywhere in the expression, sorted and deduplicated.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.entries.iter().flatten().flat_map(|t| t.symbols.iter().copied()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Resolves symbols and returns `de^1, …, de^n` as 2-forms.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<Vec<Form>, SalamonError> {
        let n = self.dim();
        if n > MAX_DIM {
            return Err(LieError::DimensionTooLarge { dim: n }.into());
        }
        self.entries.iter().enumerate().map(|(k, terms)| entry_form(terms, n, k, bindings)).collect()
    }
}

fn entry_form(terms: &[Term], n: usize, entry: usize, bindings: &Bindings) -> Result<Form, SalamonError> {
    let mut f = Form::zero(n, 2);
    for t in terms {
        for idx in [t.i, t.j] {
            if idx == 0 || idx > n {
                return Err(SalamonError::IndexOutOfRange { entry: entry + 1, index: idx, dim: n });
            }
        }
        let mut c = t.coeff.clone();
        for s in &t.symbols {
            c *= bindings.get(*s).ok_or(SalamonError::UnboundSymbol(*s))?;
        }
        f.add_term(&[t.i - 1, t.j - 1], c);
    }
    Ok(f)
}

/// A single 2-form such as `e^{12}+τe^{35}` on a `dim`-dimensional space.
pub fn parse_two_form(s: &str, dim: usize, bindings: &Bindings) -> Result<Form, SalamonError> {
    let expr = SalamonExpr::parse(s)?;
    if expr.entries.len() != 1 {
        return Err(SalamonError::Parse { position: 0, message: "expected a single 2-form".into() });
    }
    entry_form(&expr.entries[0], dim, 0, bindings)
}

/// Builds the Lie algebra with `de^k` equal to the `k`-th entry.
pub fn parse_salamon(s: &str, bindings: &Bindings) -> Result<LieAlgebra, SalamonError> {
    let de = SalamonExpr::parse(s)?.evaluate(bindings)?;
    Ok(from_differentials(&de)?)
}

/// The Lie algebra whose differentials on the dual basis are `de`.
pub fn from_differentials(de: &[Form]) -> Result<LieAlgebra, LieError> {
    let n = de.len();
    let mut entries = Vec::new();
    for (k, f) in de.iter().enumerate() {
        for (idx, a) in f.terms() {
            entries.push((idx[0], idx[1], k, -a));
        }
    }
    LieAlgebra::from_constants(n, &entries)
}

/// `de^k` for each `k`, read off the structure constants.
pub fn differentials(l: &LieAlgebra) -> Vec<Form> {
    let n = l.dim();
    let mut de: Vec<Form> = (0..n).map(|_| Form::zero(n, 2)).collect();
    for (i, j, k, c) in l.constants() {
        de[k].add_term(&[i, j], -c);
    }
    de
}

fn print_forms(de: &[Form]) -> String {
    let parts: Vec<String> = de.iter().map(|f| f.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Canonical Salamon text: terms sorted by index pair, coefficients combined,
/// U+2212 for minus, no spaces.
pub fn print_salamon(l: &LieAlgebra) -> String {
    print_forms(&differentials(l))
}

/// Canonical form of a Salamon string under the given bindings, computed at
/// the text level without building structure constants.
pub fn normalize(s: &str, bindings: &Bindings) -> Result<String, SalamonError> {
    Ok(print_forms(&SalamonExpr::parse(s)?.evaluate(bindings)?))
}
