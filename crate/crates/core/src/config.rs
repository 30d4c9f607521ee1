//! Model definition files.
//!
//! ```text
//! # comment
//! [model]
//! algebra = cylinder-classical
//! order = 4
//! gauge = van-vleck          # or floquet-magnus, with optional t0 = 1/4
//!
//! [symbols]
//! J                          # real symbol
//! omega_o = 1.5              # real symbol with a numeric binding
//! Pi ~ Pistar                # conjugate pair
//!
//! [hamiltonian]
//! mode 0 = p^2/(2*J) - J*omega_o^2*(expiphi(1) + expiphi(-1))/2
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, exact decimal or integer
//! literals, `i`, declared symbols, the built-in `omega` and `hbar`, and the
//! generators `a`, `ad` (ladder), `expiphi(n)`, `p` (cylinder) and `q`, `p`
//! (planar). Products follow the algebra's associative product, so quantum
//! expressions may be written in any order. Division and negative powers
//! are allowed only for single-term scalars.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraTag, Basis};
use crate::engine::GaugeChoice;
use crate::fourier::FourierElement;
use crate::scalar::{Bindings, GaussRational, Rational, ScalarCoeff, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line, col, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolDecl {
    pub name: String,
    pub conjugate: Option<String>,
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub algebra: AlgebraTag,
    pub symbols: Vec<SymbolDecl>,
    pub bindings: Bindings,
    pub hamiltonian: FourierElement,
    pub order: Option<usize>,
    pub gauge: Option<GaugeChoice>,
    pub format: Option<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Model,
    Symbols,
    Hamiltonian,
}

impl ModelConfig {
    pub fn parse(src: &str) -> Result<ModelConfig, ConfigError> {
        let mut section = Section::None;
        let mut model: BTreeMap<String, (String, usize, usize)> = BTreeMap::new();
        let mut symbols: Vec<(SymbolDecl, usize)> = Vec::new();
        let mut modes: Vec<(i32, String, usize, usize)> = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("");
            let trimmed = text.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = text.len() - text.trim_start().len();
            if trimmed.starts_with('[') {
                section = match trimmed {
                    "[model]" => Section::Model,
                    "[symbols]" => Section::Symbols,
                    "[hamiltonian]" => Section::Hamiltonian,
                    other => return err(line, indent + 1, format!("unknown section `{other}`")),
                };
                continue;
            }
            match section {
                Section::None => return err(line, indent + 1, "entry outside of a section"),
                Section::Model => {
                    let Some((k, v)) = text.split_once('=') else {
                        return err(line, indent + 1, "expected `key = value`");
                    };
                    let col = k.len() + 2 + (v.len() - v.trim_start().len());
                    model.insert(k.trim().to_string(), (v.trim().to_string(), line, col));
                }
                Section::Symbols => symbols.push((parse_symbol(text, line)?, line)),
                Section::Hamiltonian => {
                    let Some((k, v)) = text.split_once('=') else {
                        return err(line, indent + 1, "expected `mode m = expression`");
                    };
                    let key: Vec<&str> = k.split_whitespace().collect();
                    let m = match key.as_slice() {
                        ["mode", m] => m.parse::<i32>().or_else(|_| err(line, indent + 1, format!("invalid mode `{m}`")))?,
                        _ => return err(line, indent + 1, "expected `mode m = expression`"),
                    };
                    modes.push((m, v.to_string(), line, k.len() + 2));
                }
            }
        }

        let get = |k: &str| model.get(k);
        let Some((alg, l, c)) = get("algebra") else {
            return err(1, 1, "missing `algebra` in [model]");
        };
        let algebra: AlgebraTag = alg.parse().or_else(|_| err(*l, *c, format!("unknown algebra `{alg}`")))?;
        let order = match get("order") {
            Some((v, l, c)) => Some(v.parse::<usize>().or_else(|_| err(*l, *c, format!("invalid order `{v}`")))?),
            None => None,
        };
        let gauge = match get("gauge") {
            Some((v, l, c)) => Some(
                GaugeChoice::parse(v, get("t0").map(|t| t.0.as_str())).or_else(|e| err(*l, *c, e.to_string()))?,
            ),
            None => None,
        };
        for (k, (_, l, c)) in &model {
            if !["algebra", "order", "gauge", "t0", "format"].contains(&k.as_str()) {
                return err(*l, *c, format!("unknown key `{k}`"));
            }
        }

        let mut declared: BTreeMap<String, Symbol> = BTreeMap::new();
        declared.insert("omega".into(), Symbol::omega());
        declared.insert("hbar".into(), Symbol::hbar());
        let mut bindings = Bindings::new();
        for (d, line) in &symbols {
            let s = Symbol::intern(&d.name);
            declared.insert(d.name.clone(), s);
            if let Some(c) = &d.conjugate {
                let (_, t) = Symbol::declare_conjugate_pair(&d.name, c).or_else(|e| err(*line, 1, e.to_string()))?;
                declared.insert(c.clone(), t);
                if let Some(v) = d.value {
                    bindings.insert(t, Complex64::new(v, 0.0));
                }
            }
            if let Some(v) = d.value {
                bindings.insert(s, Complex64::new(v, 0.0));
            }
        }

        let kind = algebra.bracket_kind();
        let mut hamiltonian = FourierElement::zero();
        for (m, expr, line, col) in &modes {
            let x = Parser::new(expr, *line, *col, algebra, &declared).parse_all()?;
            hamiltonian.add_mode(&kind, *m, &x).or_else(|e| err(*line, *col, e.to_string()))?;
        }

        let mut warnings = Vec::new();
        for (m, x) in hamiltonian.modes() {
            let partner = hamiltonian.mode(-m);
            let matches = partner.is_some_and(|y| *y == x.adjoint()) || (partner.is_none() && x.adjoint().is_zero());
            if !matches && (m >= 0 || partner.is_none()) {
                warnings.push(format!("Hamiltonian is not Hermitian: mode {} differs from the adjoint of mode {m}", -m));
            }
        }

        Ok(ModelConfig {
            algebra,
            symbols: symbols.into_iter().map(|s| s.0).collect(),
            bindings,
            hamiltonian,
            order,
            gauge,
            format: get("format").map(|f| f.0.clone()),
            warnings,
        })
    }
}

fn valid_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(x) if x.is_ascii_alphabetic()) && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

const RESERVED: &[&str] = &["i", "a", "ad", "p", "q", "expiphi", "omega", "hbar"];

fn parse_symbol(text: &str, line: usize) -> Result<SymbolDecl, ConfigError> {
    let col = text.len() - text.trim_start().len() + 1;
    let (decl, value) = match text.split_once('=') {
        Some((d, v)) => {
            let vcol = d.len() + 2;
            let v = v.trim();
            (d, Some(v.parse::<f64>().or_else(|_| err(line, vcol, format!("invalid number `{v}`")))?))
        }
        None => (text, None),
    };
    let (name, conjugate) = match decl.split_once('~') {
        Some((a, b)) => (a.trim().to_string(), Some(b.trim().to_string())),
        None => (decl.trim().to_string(), None),
    };
    for n in std::iter::once(&name).chain(conjugate.as_ref()) {
        if !valid_ident(n) {
            return err(line, col, format!("invalid symbol name `{n}`"));
        }
        if RESERVED.contains(&n.as_str()) {
            return err(line, col, format!("`{n}` is reserved"));
        }
    }
    Ok(SymbolDecl { name, conjugate, value })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    tag: AlgebraTag,
    declared: &'a BTreeMap<String, Symbol>,
}

fn decimal(s: &str) -> Option<Rational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    Some(Rational::from_bigints(num, BigInt::from(10).pow(frac.len() as u32)))
}

impl<'a> Parser<'a> {
    fn new(src: &str, line: usize, col0: usize, tag: AlgebraTag, declared: &'a BTreeMap<String, Symbol>) -> Self {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                match decimal(&s) {
                    Some(q) => toks.push((Tok::Num(q), col)),
                    None => toks.push((Tok::Op('?'), col)),
                }
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else {
                toks.push((Tok::Op(c), col));
                i += 1;
            }
        }
        Parser { toks, pos: 0, line, end_col: col0 + chars.len(), tag, declared }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ConfigError> {
        err(self.line, self.col(), msg)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((Tok::Op(x), _)) if *x == c)
    }

    fn expect_op(&mut self, c: char) -> Result<(), ConfigError> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn parse_all(mut self) -> Result<AlgebraElement, ConfigError> {
        if self.toks.is_empty() {
            return self.fail("empty expression");
        }
        let x = self.expr()?;
        if self.pos < self.toks.len() {
            return self.fail("unexpected token");
        }
        Ok(x)
    }

    fn scalar(&self, c: ScalarCoeff) -> AlgebraElement {
        AlgebraElement::scalar(self.tag, c)
    }

    fn expr(&mut self) -> Result<AlgebraElement, ConfigError> {
        let mut x = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                x.add_assign(&self.term()?);
            } else if self.peek_op('-') {
                self.pos += 1;
                x.add_assign(&self.term()?.neg());
            } else {
                return Ok(x);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ConfigError> {
        let mut x = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                let y = self.unary()?;
                x = x.multiply(&y).or_else(|e| self.fail(e.to_string()))?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let col = self.col();
                let y = self.unary()?;
                let inv = invert(&y).ok_or_else(|| ConfigError { line: self.line, col, message: "division by a non-scalar or multi-term expression".into() })?;
                x = x.scale(&inv);
            } else {
                return Ok(x);
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraElement, ConfigError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn int(&mut self) -> Result<i64, ConfigError> {
        let neg = if self.peek_op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.toks.get(self.pos) {
            Some((Tok::Num(q), _)) if q.is_integer() => {
                let v: i64 = q.numer().try_into().or_else(|_| self.fail("integer out of range"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn power(&mut self) -> Result<AlgebraElement, ConfigError> {
        let x = self.atom()?;
        if !self.peek_op('^') {
            return Ok(x);
        }
        self.pos += 1;
        let col = self.col();
        let e = self.int()?;
        let bad = |m: &str| ConfigError { line: self.line, col, message: m.into() };
        if e < 0 {
            let inv = invert(&x).ok_or_else(|| bad("negative power of a non-scalar or multi-term expression"))?;
            return Ok(self.scalar(pow_coeff(&inv, -e)));
        }
        let mut out = AlgebraElement::identity(self.tag);
        for _ in 0..e {
            out = out.multiply(&x).map_err(|e| bad(&e.to_string()))?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<AlgebraElement, ConfigError> {
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return self.fail("unexpected end of expression");
        };
        match tok {
            Tok::Num(q) => {
                self.pos += 1;
                Ok(self.scalar(ScalarCoeff::rational(q)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect_op(')')?;
                Ok(x)
            }
            Tok::Op(c) => self.fail(format!("unexpected `{c}`")),
            Tok::Ident(name) => {
                let ladder = matches!(self.tag, AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical);
                let cylinder = matches!(self.tag, AlgebraTag::CylinderQuantum | AlgebraTag::CylinderClassical);
                let planar = self.tag == AlgebraTag::PlanarClassical;
                let tag = self.tag;
                let basis = |b: Basis| AlgebraElement::basis(tag, b);
                let out = match name.as_str() {
                    "i" => self.scalar(ScalarCoeff::constant(GaussRational::I)),
                    "a" if ladder => basis(Basis::ladder(0, 1)),
                    "ad" if ladder => basis(Basis::ladder(1, 0)),
                    "p" if cylinder => basis(Basis::cylinder(0, 1)),
                    "p" if planar => basis(Basis::planar(0, 1)),
                    "q" if planar => basis(Basis::planar(1, 0)),
                    "expiphi" if cylinder => {
                        self.pos += 1;
                        self.expect_op('(')?;
                        let n = self.int()?;
                        self.expect_op(')')?;
                        let n = i32::try_from(n).or_else(|_| self.fail("winding out of range"))?;
                        return Ok(basis(Basis::cylinder(n, 0)));
                    }
                    "a" | "ad" | "p" | "q" | "expiphi" => {
                        return self.fail(format!("generator `{name}` does not belong to algebra {}", self.tag));
                    }
                    _ => match self.declared.get(&name) {
                        Some(s) => self.scalar(ScalarCoeff::symbol(*s)),
                        None => return self.fail(format!("undeclared symbol `{name}`")),
                    },
                };
                self.pos += 1;
                Ok(out)
            }
        }
    }
}

/// Inverse of a single-term scalar element.
fn invert(x: &AlgebraElement) -> Option<ScalarCoeff> {
    let c = x.coeff(&Basis::identity(x.tag()));
    if x.len() != 1 || c.is_zero() {
        return None;
    }
    let t = c.single_term()?;
    Some(ScalarCoeff::term(t.value.recip(), t.monomial.inverse()))
}

fn pow_coeff(c: &ScalarCoeff, e: i64) -> ScalarCoeff {
    (0..e).fold(ScalarCoeff::one(), |acc, _| acc.mul(c))
}

impl fmt::Display for SymbolDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if let Some(c) = &self.conjugate {
            write!(f, " ~ {c}")?;
        }
        if let Some(v) = self.value {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}
