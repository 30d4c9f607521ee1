use std::fmt::Write;

use num_traits::Signed;

use super::{FreeLieSeries, IndexForm, Shape};
use crate::scalar::GaussRational;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub latex: bool,
    /// Render `S/(iħ)` instead of `S`, as listings of generators usually do.
    pub divide_by_i_hbar: bool,
    /// Append the nonzero-index constraints of each term.
    pub show_constraints: bool,
}

/// Coefficient and ħ power of a term once its `{{·,·}}` brackets are written
/// as commutators.
pub fn commutator_coeff(shape: &Shape, c: &GaussRational, divide_by_i_hbar: bool) -> (GaussRational, i32) {
    let p = shape.tree.nodes() as i32;
    let mut q = c * &GaussRational::i_pow(-p);
    let mut hbar = -p;
    if divide_by_i_hbar {
        q = &q * &GaussRational::i_pow(-1);
        hbar -= 1;
    }
    (q, hbar)
}

pub fn render_series(x: &FreeLieSeries, opts: &RenderOptions) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (shape, c)) in x.iter().enumerate() {
        let (q, hbar) = commutator_coeff(shape, c, opts.divide_by_i_hbar);
        let (negative, body) = render_term(shape, &q, hbar, opts);
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

fn render_term(shape: &Shape, q: &GaussRational, hbar: i32, opts: &RenderOptions) -> (bool, String) {
    let latex = opts.latex;
    let (negative, num, den) = if q.is_real() {
        let r = &q.re;
        (r.is_negative(), r.numer().abs().to_string(), r.denom().to_string())
    } else {
        (false, format!("({q})"), "1".to_string())
    };
    let mut tree = String::new();
    shape.tree.write_with(&mut tree, latex).expect("string write");
    let numerator = if num == "1" { tree } else { format!("{num}{}{tree}", if latex { "" } else { " " }) };

    let mut d = String::new();
    if den != "1" {
        d.push_str(&den);
    }
    let mut i = 0;
    while i < shape.denoms.len() {
        let f = &shape.denoms[i];
        let mut k = 1;
        while i + k < shape.denoms.len() && shape.denoms[i + k] == *f {
            k += 1;
        }
        if !latex && !d.is_empty() {
            d.push(' ');
        }
        write_factor(&mut d, f, k, latex);
        i += k;
    }
    let w = shape.omega_pow;
    let mut hw = String::new();
    let (h_den, w_den) = if hbar == w && hbar < 0 {
        let n = -hbar;
        hw = if latex { "(\\hbar\\omega)".into() } else { "(ħω)".into() };
        if n > 1 {
            hw.push_str(&pow(n, latex));
        }
        (0, 0)
    } else {
        (hbar, w)
    };
    let mut numer_extra = String::new();
    for (name, e) in [(if latex { "\\hbar" } else { "ħ" }, h_den), (if latex { "\\omega" } else { "ω" }, w_den)] {
        let (target, e) = if e > 0 { (&mut numer_extra, e) } else { (&mut hw, -e) };
        if e == 0 {
            continue;
        }
        target.push_str(name);
        if e > 1 {
            target.push_str(&pow(e, latex));
        }
    }
    if !hw.is_empty() {
        if !latex && !d.is_empty() {
            d.push(' ');
        }
        d.push_str(&hw);
    }
    let numerator = if numer_extra.is_empty() { numerator } else { format!("{numer_extra}{numerator}") };

    let mut s = if d.is_empty() {
        numerator
    } else if latex {
        format!("\\frac{{{numerator}}}{{{d}}}")
    } else {
        format!("{numerator}/({d})")
    };
    if !shape.mode.is_zero() {
        let mut m = String::new();
        shape.mode.write_with(&mut m, latex).expect("string write");
        let m = if shape.mode.is_single() && shape.mode.vars().all(|(_, k)| k == 1) { m } else { format!("({m})") };
        if latex {
            write!(s, "e^{{i{m}\\omega t}}").expect("string write");
        } else {
            write!(s, " e^{{i{m}ωt}}").expect("string write");
        }
    }
    if opts.show_constraints && !shape.constraints.is_empty() {
        let c: Vec<String> = shape.constraints.iter().map(|c| format!("{c}≠0")).collect();
        write!(s, " [{}]", c.join(", ")).expect("string write");
    }
    (negative, s)
}

fn pow(n: i32, latex: bool) -> String {
    if latex {
        format!("^{{{n}}}")
    } else {
        format!("^{n}")
    }
}

fn write_factor(d: &mut String, f: &IndexForm, k: usize, latex: bool) {
    let mut body = String::new();
    f.write_with(&mut body, latex).expect("string write");
    if !f.is_single() || f.vars().any(|(_, c)| c != 1) {
        body = format!("({body})");
    }
    d.push_str(&body);
    if k > 1 {
        d.push_str(&pow(k as i32, latex));
    }
}

impl std::fmt::Display for FreeLieSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_series(self, &RenderOptions::default()))
    }
}
