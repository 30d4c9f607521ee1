//! JSON form of elements, Fourier series, expansion results and free-Lie
//! closed forms. Every number is an exact integer string, so a value read
//! back is structurally equal to the one written and re-serializes to the
//! same bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraTag, Basis, LieBracketKind};
use crate::engine::{GaugeChoice, KamiltonianResult};
use crate::fourier::FourierElement;
use crate::freelie::{parse_form, parse_tree, FreeLieSeries, IndexForm, Shape, Tree};
use crate::scalar::{GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SerialError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid number `{0}`")]
    Number(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid symbol `{0}`")]
    Symbol(String),
    #[error("basis indices {indices:?} do not fit algebra {tag}")]
    Basis { tag: AlgebraTag, indices: [i64; 2] },
    #[error("term of algebra {found} inside an element of algebra {expected}")]
    MixedAlgebra { expected: AlgebraTag, found: AlgebraTag },
    #[error("invalid gauge: {0}")]
    Gauge(String),
    #[error("invalid closed-form term `{0}`")]
    FreeLie(String),
}

impl From<serde_json::Error> for SerialError {
    fn from(e: serde_json::Error) -> Self {
        SerialError::Json(e.to_string())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CoeffJson {
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BasisJson {
    pub tag: AlgebraTag,
    pub indices: [i64; 2],
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub symbols: BTreeMap<String, i32>,
    pub basis: BasisJson,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub tag: AlgebraTag,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ModeJson {
    pub mode: i32,
    pub element: ElementJson,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FourierJson {
    pub modes: Vec<ModeJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GaugeJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t0: Option<String>,
}

/// Per-order `K` and `S` of an expansion run.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ExpansionJson {
    pub algebra: AlgebraTag,
    pub order: usize,
    pub gauge: GaugeJson,
    /// Declared conjugate pairs among the symbols used.
    pub conjugates: Vec<[String; 2]>,
    /// `K^(0) … K^(N)`.
    pub k: Vec<ElementJson>,
    /// `S^(1) … S^(N+1)`.
    pub s: Vec<FourierJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FreeLieTermJson {
    pub coeff: CoeffJson,
    pub omega_pow: i32,
    pub tree: String,
    pub denoms: Vec<String>,
    pub constraints: Vec<String>,
    pub mode: String,
}

/// Closed forms of one target, indexed by order.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FreeLieJson {
    pub target: String,
    pub gauge: GaugeJson,
    pub orders: Vec<FreeLieOrderJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FreeLieOrderJson {
    pub order: usize,
    pub terms: Vec<FreeLieTermJson>,
}

fn big(s: &str) -> Result<BigInt, SerialError> {
    s.parse().map_err(|_| SerialError::Number(s.to_string()))
}

fn rational(num: &str, den: &str) -> Result<Rational, SerialError> {
    let d = big(den)?;
    if d == BigInt::from(0) {
        return Err(SerialError::ZeroDenominator);
    }
    Ok(Rational::from_bigints(big(num)?, d))
}

pub fn coeff_to_json(v: &GaussRational) -> CoeffJson {
    CoeffJson {
        re_num: v.re.numer().to_string(),
        re_den: v.re.denom().to_string(),
        im_num: v.im.numer().to_string(),
        im_den: v.im.denom().to_string(),
    }
}

pub fn coeff_from_json(c: &CoeffJson) -> Result<GaussRational, SerialError> {
    Ok(GaussRational::new(rational(&c.re_num, &c.re_den)?, rational(&c.im_num, &c.im_den)?))
}

fn monomial_from_json(m: &BTreeMap<String, i32>) -> Result<Monomial, SerialError> {
    let mut out = Monomial::one();
    for (name, e) in m {
        let s = Symbol::try_intern(name).map_err(|_| SerialError::Symbol(name.clone()))?;
        out = out.mul(&Monomial::power(s, *e));
    }
    Ok(out)
}

pub fn element_to_json(x: &AlgebraElement) -> ElementJson {
    let mut terms = Vec::new();
    for (b, c) in x.iter() {
        for (m, v) in c.iter() {
            terms.push(TermJson {
                coeff: coeff_to_json(v),
                symbols: m.by_name().into_iter().collect(),
                basis: BasisJson { tag: x.tag(), indices: b.indices() },
            });
        }
    }
    ElementJson { tag: x.tag(), terms }
}

pub fn element_from_json(j: &ElementJson) -> Result<AlgebraElement, SerialError> {
    let mut x = AlgebraElement::zero(j.tag);
    for t in &j.terms {
        if t.basis.tag != j.tag {
            return Err(SerialError::MixedAlgebra { expected: j.tag, found: t.basis.tag });
        }
        let b = Basis::from_indices(j.tag, t.basis.indices).ok_or(SerialError::Basis { tag: j.tag, indices: t.basis.indices })?;
        let c = ScalarCoeff::term(coeff_from_json(&t.coeff)?, monomial_from_json(&t.symbols)?);
        x.add_term(b, &c);
    }
    Ok(x)
}

pub fn fourier_to_json(x: &FourierElement) -> FourierJson {
    FourierJson { modes: x.modes().map(|(m, e)| ModeJson { mode: m, element: element_to_json(e) }).collect() }
}

pub fn fourier_from_json(j: &FourierJson) -> Result<FourierElement, SerialError> {
    let mut out = FourierElement::zero();
    for m in &j.modes {
        let e = element_from_json(&m.element)?;
        out.add_mode(&e.tag().bracket_kind(), m.mode, &e).map_err(|e| SerialError::Json(e.to_string()))?;
    }
    Ok(out)
}

pub fn gauge_to_json(g: &GaugeChoice) -> GaugeJson {
    match g {
        GaugeChoice::VanVleck => GaugeJson { kind: "van-vleck".into(), t0: None },
        GaugeChoice::FloquetMagnus { t0 } => GaugeJson { kind: "floquet-magnus".into(), t0: Some(t0.to_string()) },
    }
}

pub fn gauge_from_json(g: &GaugeJson) -> Result<GaugeChoice, SerialError> {
    GaugeChoice::parse(&g.kind, g.t0.as_deref()).map_err(|e| SerialError::Gauge(e.to_string()))
}

fn conjugates<'a, I: IntoIterator<Item = &'a AlgebraElement>>(xs: I) -> Vec<[String; 2]> {
    let mut pairs = std::collections::BTreeSet::new();
    for x in xs {
        for (_, c) in x.iter() {
            for (m, _) in c.iter() {
                for (s, _) in m.iter() {
                    let t = s.conjugate();
                    if t != s {
                        let (a, b) = (s.name(), t.name());
                        pairs.insert(if a < b { [a, b] } else { [b, a] });
                    }
                }
            }
        }
    }
    pairs.into_iter().collect()
}

pub fn expansion_to_json(r: &KamiltonianResult<LieBracketKind>, tag: AlgebraTag) -> ExpansionJson {
    Expansion::from_result(r, tag).to_json()
}

/// Decoded expansion: `k[n] = K^(n)`, `s[n-1] = S^(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub algebra: AlgebraTag,
    pub order: usize,
    pub gauge: GaugeChoice,
    pub k: Vec<AlgebraElement>,
    pub s: Vec<FourierElement>,
}

pub fn expansion_from_json(j: &ExpansionJson) -> Result<Expansion, SerialError> {
    for [a, b] in &j.conjugates {
        Symbol::declare_conjugate_pair(a, b).map_err(|e| SerialError::Symbol(e.to_string()))?;
    }
    Ok(Expansion {
        algebra: j.algebra,
        order: j.order,
        gauge: gauge_from_json(&j.gauge)?,
        k: j.k.iter().map(element_from_json).collect::<Result<_, _>>()?,
        s: j.s.iter().map(fourier_from_json).collect::<Result<_, _>>()?,
    })
}

impl Expansion {
    pub fn from_result(r: &KamiltonianResult<LieBracketKind>, tag: AlgebraTag) -> Self {
        Expansion { algebra: tag, order: r.order, gauge: r.gauge.clone(), k: r.k.clone(), s: r.s_terms().to_vec() }
    }

    pub fn to_json(&self) -> ExpansionJson {
        let s_elems = self.s.iter().flat_map(|s| s.modes().map(|(_, e)| e));
        ExpansionJson {
            algebra: self.algebra,
            order: self.order,
            gauge: gauge_to_json(&self.gauge),
            conjugates: conjugates(self.k.iter().chain(s_elems)),
            k: self.k.iter().map(element_to_json).collect(),
            s: self.s.iter().map(fourier_to_json).collect(),
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serializes")
    }

    pub fn parse(s: &str) -> Result<Self, SerialError> {
        expansion_from_json(&serde_json::from_str(s)?)
    }
}

/// Compact tree notation: `[H(m1),H(-m1)]`.
pub fn tree_compact(t: &Tree) -> String {
    match t {
        Tree::Leaf(f) => format!("H({})", form_compact(f)),
        Tree::Node(a, b) => format!("[{},{}]", tree_compact(a), tree_compact(b)),
    }
}

pub fn form_compact(f: &IndexForm) -> String {
    f.to_string().chars().filter(|c| !c.is_whitespace()).collect()
}

fn form_from(s: &str) -> Result<IndexForm, SerialError> {
    parse_form(s).ok_or_else(|| SerialError::FreeLie(s.to_string()))
}

pub fn freelie_to_json(x: &FreeLieSeries) -> Vec<FreeLieTermJson> {
    x.iter()
        .map(|(sh, c)| FreeLieTermJson {
            coeff: coeff_to_json(c),
            omega_pow: sh.omega_pow,
            tree: tree_compact(&sh.tree),
            denoms: sh.denoms.iter().map(form_compact).collect(),
            constraints: sh.constraints.iter().map(form_compact).collect(),
            mode: form_compact(&sh.mode),
        })
        .collect()
}

pub fn freelie_from_json(terms: &[FreeLieTermJson]) -> Result<FreeLieSeries, SerialError> {
    let mut out = FreeLieSeries::zero();
    for t in terms {
        let shape = Shape {
            tree: parse_tree(&t.tree).ok_or_else(|| SerialError::FreeLie(t.tree.clone()))?,
            denoms: t.denoms.iter().map(|d| form_from(d)).collect::<Result<_, _>>()?,
            constraints: t.constraints.iter().map(|d| form_from(d)).collect::<Result<_, _>>()?,
            mode: form_from(&t.mode)?,
            omega_pow: t.omega_pow,
        };
        out.push(shape, coeff_from_json(&t.coeff)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::kamiltonian;
    use crate::models::{kapitza_build, Flavor, KapitzaParams};

    #[test]
    fn element_round_trip() {
        let kind = LieBracketKind::QuantumCylinder;
        let r = kamiltonian(&kind, &kapitza_build(&KapitzaParams::symbolic(Flavor::Quantum)), 2, &GaugeChoice::VanVleck).unwrap();
        let doc = Expansion::from_result(&r, AlgebraTag::CylinderQuantum);
        let text = doc.to_string_pretty();
        let back = Expansion::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_string_pretty(), text);
    }

    #[test]
    fn big_coefficients_survive() {
        let huge = Rational::from_bigints(BigInt::from(10).pow(40) + 1, BigInt::from(3));
        let x = AlgebraElement::scalar(AlgebraTag::LadderQuantum, ScalarCoeff::rational(huge));
        assert_eq!(element_from_json(&element_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn rejects_bad_input() {
        let mut j = element_to_json(&AlgebraElement::identity(AlgebraTag::LadderQuantum));
        j.terms[0].coeff.re_den = "0".into();
        assert_eq!(element_from_json(&j), Err(SerialError::ZeroDenominator));
        j.terms[0].coeff.re_den = "x".into();
        assert!(matches!(element_from_json(&j), Err(SerialError::Number(_))));
        j.terms[0].coeff.re_den = "1".into();
        j.terms[0].basis.indices = [-1, 0];
        assert!(matches!(element_from_json(&j), Err(SerialError::Basis { .. })));
    }

    #[test]
    fn closed_form_round_trip() {
        use crate::freelie::{generate_closed_form, Target, DEFAULT_MAX_ORDER};
        let k = generate_closed_form(3, Target::K, &GaugeChoice::VanVleck, DEFAULT_MAX_ORDER).unwrap();
        for x in &k {
            let j = freelie_to_json(x);
            assert_eq!(&freelie_from_json(&j).unwrap(), x);
        }
    }
}
