//! Published closed forms of `K^(0..3)` and `S^(1..3)`, entered by hand in a
//! compact notation: `H(f)` is a Fourier component, `[x,y]` a commutator.
//! Each listed coefficient multiplies the commutator form over `(ħω)^n`;
//! generator entries are listed as `S/(iħ)`.
//!
//! Summation constraints follow the listing convention: every composite
//! index (the index sum of any subtree, the mode included) is nonzero unless
//! it vanishes identically.

use super::{FreeLieSeries, FreeLieTerm, IndexForm, Shape, Tree};
use crate::scalar::{GaussRational, Rational};

/// `num/den · tree / Π denoms`, with time dependence `e^{i·mode·ωt}`.
#[derive(Clone, Copy, Debug)]
pub struct FixtureTerm {
    pub num: i64,
    pub den: i64,
    pub tree: &'static str,
    pub denoms: &'static [&'static str],
    pub mode: &'static str,
}

const fn k(num: i64, den: i64, tree: &'static str, denoms: &'static [&'static str]) -> FixtureTerm {
    FixtureTerm { num, den, tree, denoms, mode: "0" }
}

const fn s(num: i64, den: i64, tree: &'static str, denoms: &'static [&'static str]) -> FixtureTerm {
    FixtureTerm { num, den, tree, denoms, mode: "m1" }
}

const K0: &[FixtureTerm] = &[k(1, 1, "H(0)", &[])];

const K1: &[FixtureTerm] = &[k(1, 2, "[H(m1),H(-m1)]", &["m1"])];

const K2: &[FixtureTerm] = &[
    k(1, 2, "[[H(m1),H(0)],H(-m1)]", &["m1", "m1"]),
    k(1, 3, "[[H(m2),H(m1-m2)],H(-m1)]", &["m1", "m2"]),
];

const K3: &[FixtureTerm] = &[
    k(1, 2, "[[[H(m1),H(0)],H(0)],H(-m1)]", &["m1", "m1", "m1"]),
    k(1, 3, "[[[H(m2),H(0)],H(m1-m2)],H(-m1)]", &["m1", "m2", "m2"]),
    k(1, 4, "[[[H(m2),H(m1-m2)],H(0)],H(-m1)]", &["m1", "m1", "m2"]),
    k(1, 6, "[[[H(m3),H(m2-m3)],H(m1-m2)],H(-m1)]", &["m1", "m2", "m3"]),
    k(1, 12, "[[H(m1),H(0)],[H(m2),H(-m1-m2)]]", &["m1", "m1", "m2"]),
    k(1, 24, "[[H(m2),H(m1-m2)],[H(m3),H(-m1-m3)]]", &["m1", "m2", "m3"]),
    k(1, 8, "[[H(m1),[H(m2),H(-m2)]],H(-m1)]", &["m1", "m1", "m2"]),
    k(1, 24, "[[H(m2),[H(m3),H(m1-m2-m3)]],H(-m1)]", &["m1", "m2", "m3"]),
];

const S1: &[FixtureTerm] = &[s(1, 1, "H(m1)", &["m1"])];

const S2: &[FixtureTerm] = &[
    s(1, 1, "[H(m1),H(0)]", &["m1", "m1"]),
    s(1, 2, "[H(m2),H(m1-m2)]", &["m1", "m2"]),
];

const S3: &[FixtureTerm] = &[
    s(1, 1, "[[H(m1),H(0)],H(0)]", &["m1", "m1", "m1"]),
    s(1, 2, "[[H(m2),H(0)],H(m1-m2)]", &["m1", "m2", "m2"]),
    s(-1, 2, "[[H(-m2),H(m1+m2)],H(0)]", &["m1", "m1", "m2"]),
    s(-1, 4, "[[H(-m3),H(m2+m3)],H(m1-m2)]", &["m1", "m2", "m3"]),
    s(1, 3, "[H(m1),[H(m2),H(-m2)]]", &["m1", "m1", "m1"]),
    s(-1, 12, "[H(m2),[H(-m3),H(m1-m2+m3)]]", &["m1", "m2", "m3"]),
];

/// Corrections to the published listing, as (order, term position, term).
/// The `S^(3)` term with an inner `[H(m2),H(-m2)]` carries `m1²m2` (the
/// listing prints `m1³`, which is dimensionally inconsistent with its
/// siblings and numerically wrong).
const S_ERRATA: &[(usize, usize, FixtureTerm)] = &[(3, 4, s(1, 3, "[H(m1),[H(m2),H(-m2)]]", &["m1", "m1", "m2"]))];

/// Published `K^(n)` for `n ≤ 3`.
pub fn reference_k(n: usize) -> Option<FreeLieSeries> {
    let list = [K0, K1, K2, K3].get(n)?;
    Some(build(list, n, false))
}

/// Published `S^(n)` for `1 ≤ n ≤ 3` (as `S`, not `S/(iħ)`).
pub fn reference_s(n: usize) -> Option<FreeLieSeries> {
    let list = [S1, S2, S3].get(n.checked_sub(1)?)?;
    Some(build(list, n, true))
}

/// [`reference_s`] with the known errata applied.
pub fn corrected_s(n: usize) -> Option<FreeLieSeries> {
    let mut list = [S1, S2, S3].get(n.checked_sub(1)?)?.to_vec();
    for (order, pos, t) in S_ERRATA {
        if *order == n {
            list[*pos] = *t;
        }
    }
    Some(build(&list, n, true))
}

fn build(list: &[FixtureTerm], n: usize, generator: bool) -> FreeLieSeries {
    FreeLieSeries::from_terms(list.iter().map(|t| t.to_term(n, generator)))
}

impl FixtureTerm {
    /// The term in bracket form: a commutator coefficient `q` over `p`
    /// brackets is `q·i^p` in `{{·,·}}` form, and `S = iħ·(S/(iħ))` adds one
    /// more factor of `i` (its ħ cancels the extra bracket's `1/ħ`).
    pub fn to_term(&self, n: usize, generator: bool) -> FreeLieTerm {
        let tree = parse_tree(self.tree).expect("well-formed fixture");
        let p = tree.nodes() as i32 + i32::from(generator);
        let coeff = GaussRational::real(Rational::new(self.num, self.den));
        let coeff = &coeff * &GaussRational::i_pow(p);
        let denoms: Vec<IndexForm> = self.denoms.iter().map(|d| parse_form(d).expect("well-formed fixture")).collect();
        let mode = parse_form(self.mode).expect("well-formed fixture");
        let mut constraints = Vec::new();
        tree.composites(&mut constraints);
        constraints.extend(denoms.iter().cloned());
        constraints.push(mode.clone());
        constraints.retain(|c| !c.is_zero());
        FreeLieTerm { shape: Shape { tree, denoms, constraints, mode, omega_pow: -(n as i32) }, coeff }
    }
}

/// Parses `m1-m2+2m3`, `-m1`, `0`.
pub fn parse_form(s: &str) -> Option<IndexForm> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Some(IndexForm::zero());
    }
    let mut coeffs: Vec<i32> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let k: i32 = if digits == 0 { 1 } else { rest[..digits].parse().ok()? };
        rest = rest[digits..].strip_prefix('m')?;
        let idx_len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let v: usize = rest[..idx_len].parse().ok()?;
        rest = &rest[idx_len..];
        if v == 0 {
            return None;
        }
        if coeffs.len() < v {
            coeffs.resize(v, 0);
        }
        coeffs[v - 1] += sign * k;
    }
    Some(IndexForm::from_coeffs(coeffs))
}

/// Parses `H(f)` and `[x,y]`.
pub fn parse_tree(s: &str) -> Option<Tree> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (t, rest) = tree_at(&s)?;
    rest.is_empty().then_some(t)
}

fn tree_at(s: &str) -> Option<(Tree, &str)> {
    if let Some(rest) = s.strip_prefix("H(") {
        let end = rest.find(')')?;
        return Some((Tree::leaf(parse_form(&rest[..end])?), &rest[end + 1..]));
    }
    let rest = s.strip_prefix('[')?;
    let (a, rest) = tree_at(rest)?;
    let rest = rest.strip_prefix(',')?;
    let (b, rest) = tree_at(rest)?;
    Some((Tree::node(a, b), rest.strip_prefix(']')?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_notation() {
        assert_eq!(parse_form("m1-m2").unwrap().coeffs(), &[1, -1]);
        assert_eq!(parse_form("-m1-2m3").unwrap().coeffs(), &[-1, 0, -2]);
        assert!(parse_form("0").unwrap().is_zero());
        let t = parse_tree("[[H(m1),H(0)],H(-m1)]").unwrap();
        assert_eq!(t.nodes(), 2);
        assert_eq!(t.to_string(), "[[H_{m1}, H_{0}], H_{-m1}]");
        assert!(parse_tree("[H(m1),H(0)").is_none());
    }

    #[test]
    fn listing_sizes() {
        assert_eq!(reference_k(3).unwrap().len(), 8);
        assert_eq!(reference_s(3).unwrap().len(), 6);
        assert!(reference_k(4).is_none());
        assert!(reference_s(0).is_none());
    }
}
