use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use super::{GaussRational, Monomial, Rational, Symbol};

/// One coefficient term: Gaussian rational times a Laurent monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub value: GaussRational,
    pub monomial: Monomial,
}

impl Term {
    pub fn new(value: GaussRational, monomial: Monomial) -> Self {
        Term { value, monomial }
    }

    pub fn mul(&self, o: &Term) -> Term {
        Term { value: &self.value * &o.value, monomial: self.monomial.mul(&o.monomial) }
    }

    pub fn conj(&self) -> Term {
        Term { value: self.value.conj(), monomial: self.monomial.conj() }
    }
}

/// Exact scalar coefficient: a finite sum of [`Term`]s, i.e. a Laurent
/// polynomial with Gaussian-rational coefficients.
///
/// Canonical: like monomials merged, no zero entries. The zero coefficient is
/// the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarCoeff {
    terms: BTreeMap<Monomial, GaussRational>,
}

/// Numeric values for symbols, used when evaluating coefficients.
pub type Bindings = HashMap<Symbol, Complex64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no numeric value bound for symbol `{0}`")]
    Unbound(String),
}

impl ScalarCoeff {
    pub fn zero() -> Self {
        ScalarCoeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::ONE)
    }

    pub fn constant(v: GaussRational) -> Self {
        Self::term(v, Monomial::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(GaussRational::real(q))
    }

    pub fn term(v: GaussRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(m, v);
        }
        ScalarCoeff { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(GaussRational::ONE, Monomial::symbol(s))
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(it: I) -> Self {
        let mut c = ScalarCoeff::zero();
        for t in it {
            c.add_term(t.value, t.monomial);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(m, v)| Term::new(v.clone(), m.clone()))
    }

    /// Coefficient of the exact monomial `m` (zero when absent).
    pub fn get(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, v: GaussRational, m: Monomial) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &v;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &ScalarCoeff) {
        for (m, v) in &o.terms {
            self.add_term(v.clone(), m.clone());
        }
    }

    /// `self += o * scale * monomial`, the inner kernel of every product.
    pub fn add_scaled(&mut self, o: &ScalarCoeff, scale: &GaussRational, monomial: &Monomial) {
        if scale.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(v * scale, m.mul(monomial));
        }
    }

    pub fn add(&self, o: &ScalarCoeff) -> ScalarCoeff {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &ScalarCoeff) -> ScalarCoeff {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ScalarCoeff {
        ScalarCoeff { terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }

    pub fn mul(&self, o: &ScalarCoeff) -> ScalarCoeff {
        let mut r = ScalarCoeff::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &o.terms {
                r.add_term(v1 * v2, m1.mul(m2));
            }
        }
        r
    }

    pub fn scale(&self, s: &GaussRational) -> ScalarCoeff {
        if s.is_zero() {
            return ScalarCoeff::zero();
        }
        ScalarCoeff { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * s)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> ScalarCoeff {
        self.scale(&GaussRational::real(q.clone()))
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> ScalarCoeff {
        if mono.is_one() {
            return self.clone();
        }
        ScalarCoeff { terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect() }
    }

    /// Complex conjugation: `i -> -i`, conjugate symbol pairs swapped.
    pub fn conj(&self) -> ScalarCoeff {
        let mut r = ScalarCoeff::zero();
        for (m, v) in &self.terms {
            r.add_term(v.conj(), m.conj());
        }
        r
    }

    /// Keeps only terms whose monomial satisfies `pred`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> ScalarCoeff {
        ScalarCoeff {
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    /// Maximum and minimum exponent of `s` over all terms.
    pub fn exponent_range(&self, s: Symbol) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exponent(s));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<Complex64, EvalError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, v) in &self.terms {
            let mut t = v.to_complex();
            for (s, e) in m.iter() {
                let x = bindings.get(&s).ok_or_else(|| EvalError::Unbound(s.name()))?;
                t *= x.powi(e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `Some(q)` when this is a plain rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::ZERO),
            1 => {
                let (m, v) = self.terms.iter().next()?;
                (m.is_one() && v.is_real()).then(|| v.re.clone())
            }
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<Term> {
        (self.terms.len() == 1).then(|| self.terms().next()).flatten()
    }
}

impl fmt::Debug for ScalarCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, v)| format!("{v}*{m:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: &str) -> Symbol {
        Symbol::intern(n)
    }

    #[test]
    fn exponent_addition() {
        let w = Symbol::omega();
        let a = ScalarCoeff::term(GaussRational::real(Rational::new(1, 2)), Monomial::power(w, -1));
        let b = ScalarCoeff::term(GaussRational::from_int(3), Monomial::power(w, -1));
        let expected = ScalarCoeff::term(GaussRational::real(Rational::new(3, 2)), Monomial::power(w, -2));
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn conjugate_pair_swaps() {
        let pi = sym("Pi");
        let c = ScalarCoeff::term(GaussRational::I, Monomial::symbol(pi));
        let expected = ScalarCoeff::term(-GaussRational::I, Monomial::symbol(pi.conjugate()));
        assert_eq!(c.conj(), expected);
    }

    #[test]
    fn like_terms_merge() {
        let g = sym("g4");
        let a = ScalarCoeff::term(GaussRational::real(Rational::new(1, 3)), Monomial::symbol(g));
        let b = ScalarCoeff::term(GaussRational::real(Rational::new(2, 3)), Monomial::symbol(g));
        assert_eq!(a.add(&b), ScalarCoeff::symbol(g));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn zero_is_canonical() {
        let g = sym("g4");
        let mut c = ScalarCoeff::symbol(g);
        c.add_term(GaussRational::from_int(-1), Monomial::symbol(g));
        assert_eq!(c, ScalarCoeff::zero());
        assert_eq!(ScalarCoeff::term(GaussRational::ZERO, Monomial::symbol(g)), ScalarCoeff::zero());
    }
}
