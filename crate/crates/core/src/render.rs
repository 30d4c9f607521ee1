//! Human-readable text and LaTeX for elements, Fourier series and expansion
//! results. Quantum elements print in the internal normal order, or in Weyl
//! (symmetric) order on request; cylinder exponentials pair into cos/sin.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{AlgebraElement, AlgebraTag, Basis};
use crate::fourier::FourierElement;
use crate::scalar::{binomial, factorial, GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Ordering {
    #[default]
    Normal,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Style {
    pub latex: bool,
    pub ordering: Ordering,
}

impl Style {
    pub const TEXT: Style = Style { latex: false, ordering: Ordering::Normal };
    pub const LATEX: Style = Style { latex: true, ordering: Ordering::Normal };
}

/// Printed operator factor: basis monomial or a cos/sin pairing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Op {
    Basis(Basis),
    Cos { n: i32, k: u16 },
    Sin { n: i32, k: u16 },
}

fn symbol_text(s: Symbol) -> String {
    match s.name().as_str() {
        "omega" => "ω".into(),
        "hbar" => "ħ".into(),
        "delta" => "δ".into(),
        "Pi" => "Π".into(),
        "Pistar" => "Π*".into(),
        "omega_o" => "ω_o".into(),
        n => n.into(),
    }
}

fn power(base: &str, e: i32, latex: bool) -> String {
    match (e, latex) {
        (1, _) => base.to_string(),
        (_, true) => format!("{base}^{{{e}}}"),
        (_, false) => format!("{base}^{e}"),
    }
}

/// Numerator and denominator factor lists of a monomial.
fn monomial_parts(m: &Monomial, latex: bool) -> (Vec<String>, Vec<String>) {
    let (mut num, mut den) = (Vec::new(), Vec::new());
    for (s, e) in m.iter() {
        let name = if latex { s.latex() } else { symbol_text(s) };
        if e > 0 {
            num.push(power(&name, e, latex));
        } else {
            den.push(power(&name, -e, latex));
        }
    }
    (num, den)
}

/// One coefficient term with its sign split off: (negative, magnitude text).
fn term_text(v: &GaussRational, m: &Monomial, latex: bool) -> (bool, String) {
    let (mut num, mut den) = monomial_parts(m, latex);
    let (neg, lead, q) = if v.im.is_zero() {
        (v.re.is_negative(), String::new(), v.re.abs())
    } else if v.re.is_zero() {
        (v.im.is_negative(), "i".to_string(), v.im.abs())
    } else {
        let z = if latex {
            format!("({} {} {}i)", latex_rational(&v.re), if v.im.is_negative() { "-" } else { "+" }, latex_rational(&v.im.abs()))
        } else {
            format!("{v}")
        };
        (false, z, Rational::ONE)
    };
    let (qn, qd) = (q.numer(), q.denom());
    let one = num_bigint::BigInt::from(1);
    let mut head = Vec::new();
    if qn != one || (lead.is_empty() && num.is_empty()) {
        head.push(qn.to_string());
    }
    if !lead.is_empty() {
        head.push(lead);
    }
    head.append(&mut num);
    if qd != one {
        den.insert(0, qd.to_string());
    }
    let numer = if head.is_empty() { "1".to_string() } else { head.join(" ") };
    let s = if den.is_empty() {
        numer
    } else if latex {
        format!("\\frac{{{numer}}}{{{}}}", den.join(" "))
    } else if den.len() == 1 {
        format!("{numer}/{}", den[0])
    } else {
        format!("{numer}/({})", den.join(" "))
    };
    (neg, s)
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().magnitude(), q.denom())
    }
}

/// A coefficient as a signed sum. Returns the sign of a single-term
/// coefficient separately so the caller can fold it into the running sum.
fn coeff_text(c: &ScalarCoeff, latex: bool) -> (bool, String, bool) {
    let parts: Vec<(bool, String)> = c.iter().map(|(m, v)| term_text(v, m, latex)).collect();
    if parts.len() == 1 {
        let (neg, s) = parts.into_iter().next().expect("one part");
        return (neg, s, false);
    }
    let mut s = String::new();
    for (i, (neg, t)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(t);
    }
    (false, s, true)
}

fn op_text(tag: AlgebraTag, op: Op, latex: bool) -> String {
    let quantum = tag.is_quantum();
    let hat = |x: &str| if latex && quantum { format!("\\hat{{{x}}}") } else { x.to_string() };
    let p = |k: u16| -> Option<String> {
        (k > 0).then(|| power(&if latex { hat("p") } else { "p".into() }, k as i32, latex))
    };
    let phi = if latex { hat("\\phi") } else { "φ".to_string() };
    let angle = |n: i32| if n == 1 { phi.clone() } else { format!("{n}{phi}") };
    let mut parts: Vec<String> = Vec::new();
    match op {
        Op::Basis(Basis::Ladder { dagger, annihilation }) => {
            let (c, a) = match (quantum, latex) {
                (true, true) => ("\\hat{a}^{\\dagger}".to_string(), "\\hat{a}".to_string()),
                (true, false) => ("a†".to_string(), "a".to_string()),
                (false, true) => ("\\alpha^{*}".to_string(), "\\alpha".to_string()),
                (false, false) => ("α*".to_string(), "α".to_string()),
            };
            if dagger > 0 {
                parts.push(if latex && quantum && dagger > 1 {
                    format!("\\hat{{a}}^{{\\dagger {dagger}}}")
                } else {
                    power(&c, dagger as i32, latex)
                });
            }
            if annihilation > 0 {
                parts.push(power(&a, annihilation as i32, latex));
            }
        }
        Op::Basis(Basis::Cylinder { winding, momentum }) => {
            if winding != 0 {
                let w = if winding == 1 { String::new() } else if winding == -1 { "-".into() } else { winding.to_string() };
                parts.push(if latex { format!("e^{{{w}i{phi}}}") } else { format!("e^{{{w}iφ}}") });
            }
            parts.extend(p(momentum));
        }
        Op::Basis(Basis::Planar { position, momentum }) => {
            if position > 0 {
                parts.push(power("q", position as i32, latex));
            }
            parts.extend(p(momentum));
        }
        Op::Cos { n, k } => {
            parts.push(if latex { format!("\\cos {}", angle(n)) } else { format!("cos({})", angle(n)) });
            parts.extend(p(k));
        }
        Op::Sin { n, k } => {
            parts.push(if latex { format!("\\sin {}", angle(n)) } else { format!("sin({})", angle(n)) });
            parts.extend(p(k));
        }
    }
    parts.join(if latex { "\\," } else { " " })
}

/// Coefficients per operator, with cylinder exponentials paired into
/// `A cos nφ + B sin nφ` when both signs of `n` appear or the result is real.
fn ops(x: &AlgebraElement) -> BTreeMap<Op, ScalarCoeff> {
    let mut out: BTreeMap<Op, ScalarCoeff> = BTreeMap::new();
    for (b, c) in x.iter() {
        match *b {
            Basis::Cylinder { winding, momentum } if winding != 0 => {
                let n = winding.abs();
                let plus = x.coeff(&Basis::cylinder(n, momentum));
                let minus = x.coeff(&Basis::cylinder(-n, momentum));
                if plus.is_zero() || minus.is_zero() {
                    out.insert(Op::Basis(*b), c.clone());
                } else if winding > 0 {
                    let cos = plus.add(&minus);
                    let sin = plus.sub(&minus).scale(&GaussRational::I);
                    if !cos.is_zero() {
                        out.insert(Op::Cos { n, k: momentum }, cos);
                    }
                    if !sin.is_zero() {
                        out.insert(Op::Sin { n, k: momentum }, sin);
                    }
                }
            }
            _ => {
                out.insert(Op::Basis(*b), c.clone());
            }
        }
    }
    out
}

/// Weyl-ordered components: `x = Σ c_b {b}_W`.
pub fn to_weyl(x: &AlgebraElement) -> AlgebraElement {
    let tag = x.tag();
    if !tag.is_quantum() {
        return x.clone();
    }
    let hbar = Symbol::hbar();
    let mut out = AlgebraElement::zero(tag);
    for (b, c) in x.iter() {
        match *b {
            // a†^j a^k = Σ_r r! C(j,r) C(k,r) (-1/2)^r {a†^{j-r} a^{k-r}}_W
            Basis::Ladder { dagger: j, annihilation: k } => {
                for r in 0..=j.min(k) {
                    let f = factorial(r as u32) * binomial(j as u32, r as u32) * binomial(k as u32, r as u32) * Rational::new(-1, 2).pow(r as i32);
                    out.add_term(Basis::ladder(j - r, k - r), &c.scale(&GaussRational::real(f)));
                }
            }
            // e^{inφ} p^k = Σ_s C(k,s) (-nħ/2)^{k-s} {e^{inφ} p^s}_W
            Basis::Cylinder { winding: n, momentum: k } => {
                for s in 0..=k {
                    if s != k && n == 0 {
                        continue;
                    }
                    let f = binomial(k as u32, s as u32) * Rational::new(-(n as i64), 2).pow((k - s) as i32);
                    let h = ScalarCoeff::term(GaussRational::real(f), Monomial::power(hbar, (k - s) as i32));
                    out.add_term(Basis::cylinder(n, s), &c.mul(&h));
                }
            }
            Basis::Planar { .. } => out.add_term(*b, c),
        }
    }
    out
}

pub fn element(x: &AlgebraElement, style: Style) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let weyl = style.ordering == Ordering::Weyl && x.tag().is_quantum();
    let y = if weyl { to_weyl(x) } else { x.clone() };
    let mut s = String::new();
    for (i, (op, c)) in ops(&y).into_iter().enumerate() {
        let (neg, ct, group) = coeff_text(&c, style.latex);
        let mut o = op_text(y.tag(), op, style.latex);
        if weyl && !o.is_empty() {
            o = if style.latex { format!("\\{{{o}\\}}_W") } else { format!("{{{o}}}_W") };
        }
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let sep = if style.latex { "\\," } else { " " };
        match (o.is_empty(), group) {
            (true, _) => s.push_str(&ct),
            (false, true) => write!(s, "({ct}){sep}{o}").expect("string write"),
            (false, false) if ct == "1" => s.push_str(&o),
            (false, false) => write!(s, "{ct}{sep}{o}").expect("string write"),
        }
    }
    s
}

fn phase(m: i32, latex: bool) -> String {
    let w = match m {
        1 => String::new(),
        -1 => "-".into(),
        m => m.to_string(),
    };
    if latex {
        format!("e^{{{w}i\\omega t}}")
    } else {
        format!("e^{{{w}iωt}}")
    }
}

pub fn fourier(x: &FourierElement, style: Style) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .modes()
        .map(|(m, e)| {
            let body = element(e, style);
            if m == 0 {
                format!("({body})")
            } else {
                let sep = if style.latex { "\\," } else { " " };
                format!("({body}){sep}{}", phase(m, style.latex))
            }
        })
        .collect();
    parts.join(" + ")
}

/// Line-per-order listing of `K^(n)` and `S^(n)`.
pub fn expansion(k: &[AlgebraElement], s: &[FourierElement], style: Style) -> String {
    let mut out = String::new();
    if style.latex {
        out.push_str("\\begin{align*}\n");
        for (n, x) in k.iter().enumerate() {
            writeln!(out, "K^{{({n})}} &= {} \\\\", element(x, style)).expect("string write");
        }
        for (n, x) in s.iter().enumerate() {
            writeln!(out, "S^{{({})}} &= {} \\\\", n + 1, fourier(x, style)).expect("string write");
        }
        out.push_str("\\end{align*}\n");
    } else {
        for (n, x) in k.iter().enumerate() {
            writeln!(out, "K^({n}) = {}", element(x, style)).expect("string write");
        }
        for (n, x) in s.iter().enumerate() {
            writeln!(out, "S^({}) = {}", n + 1, fourier(x, style)).expect("string write");
        }
    }
    out
}
