use std::collections::BTreeMap;
use std::fmt;

use super::basis::{basis_adjoint, basis_poisson, basis_product, BasisTerm};
use super::{AlgebraError, AlgebraTag, Basis, LieBracketKind};
use crate::scalar::{GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

/// Canonical finite sum of basis monomials with [`ScalarCoeff`] weights.
///
/// Like terms are merged and zero coefficients pruned on every mutation, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    tag: AlgebraTag,
    terms: BTreeMap<Basis, ScalarCoeff>,
}

impl AlgebraElement {
    pub fn zero(tag: AlgebraTag) -> Self {
        AlgebraElement { tag, terms: BTreeMap::new() }
    }

    /// Scalar multiple of the identity.
    pub fn scalar(tag: AlgebraTag, c: ScalarCoeff) -> Self {
        Self::monomial(tag, Basis::identity(tag), c)
    }

    pub fn identity(tag: AlgebraTag) -> Self {
        Self::scalar(tag, ScalarCoeff::one())
    }

    /// Panics when `basis` does not belong to `tag`.
    pub fn monomial(tag: AlgebraTag, basis: Basis, c: ScalarCoeff) -> Self {
        assert!(basis.fits(tag), "basis {basis:?} does not belong to {tag}");
        let mut e = Self::zero(tag);
        e.add_term(basis, &c);
        e
    }

    pub fn basis(tag: AlgebraTag, basis: Basis) -> Self {
        Self::monomial(tag, basis, ScalarCoeff::one())
    }

    pub fn try_from_terms<I>(tag: AlgebraTag, it: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Basis, ScalarCoeff)>,
    {
        let mut e = Self::zero(tag);
        for (b, c) in it {
            if !b.fits(tag) {
                return Err(AlgebraError::BasisMismatch(tag));
            }
            e.add_term(b, &c);
        }
        Ok(e)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
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

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &ScalarCoeff)> {
        self.terms.iter()
    }

    /// Coefficient of `basis` (zero when absent).
    pub fn coeff(&self, basis: &Basis) -> ScalarCoeff {
        self.terms.get(basis).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, basis: Basis, c: &ScalarCoeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(basis).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&basis);
        }
    }

    fn check(&self, o: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.tag == o.tag {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch { left: self.tag, right: o.tag })
        }
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(o)?;
        let mut r = self.clone();
        r.add_assign(o);
        Ok(r)
    }

    pub fn sub(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&o.neg())
    }

    /// In-place sum; panics on a tag mismatch.
    pub fn add_assign(&mut self, o: &AlgebraElement) {
        assert_eq!(self.tag, o.tag, "algebra mismatch in add_assign");
        for (b, c) in &o.terms {
            self.add_term(*b, c);
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &ScalarCoeff) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero(self.tag);
        }
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn scale_gauss(&self, s: &GaussRational) -> AlgebraElement {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_rational(&self, q: &Rational) -> AlgebraElement {
        self.map_coeffs(|c| c.scale_rational(q))
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<F: Fn(&ScalarCoeff) -> ScalarCoeff>(&self, f: F) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .filter_map(|(b, c)| {
                let c = f(c);
                (!c.is_zero()).then_some((*b, c))
            })
            .collect();
        AlgebraElement { tag: self.tag, terms }
    }

    /// Keeps only the terms whose basis monomial satisfies `pred`.
    pub fn filter_basis<F: Fn(&Basis) -> bool>(&self, pred: F) -> AlgebraElement {
        let terms = self.terms.iter().filter(|(b, _)| pred(b)).map(|(b, c)| (*b, c.clone())).collect();
        AlgebraElement { tag: self.tag, terms }
    }

    /// Associative product, normal-ordered in the quantum algebras and
    /// pointwise in the classical ones.
    pub fn multiply(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(o)?;
        let mut acc = Accumulator::default();
        for (x, cx) in &self.terms {
            for (y, cy) in &o.terms {
                let cxy = cx.mul(cy);
                acc.extend(&cxy, basis_product(self.tag, *x, *y));
            }
        }
        Ok(acc.finish(self.tag))
    }

    /// The algebra's Lie bracket: Poisson for classical tags, `[A,B]/(iħ)` for
    /// quantum ones.
    pub fn bracket(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(o)?;
        let tag = self.tag;
        let mut acc = Accumulator::default();
        for (x, cx) in &self.terms {
            for (y, cy) in &o.terms {
                if x.is_identity() || y.is_identity() {
                    continue;
                }
                let terms = if tag.is_quantum() {
                    quantum_commutator(tag, *x, *y)
                } else {
                    basis_poisson(tag, *x, *y).into_iter().collect()
                };
                if !terms.is_empty() {
                    acc.extend(&cx.mul(cy), terms);
                }
            }
        }
        Ok(acc.finish(tag))
    }

    /// Hermitian adjoint (complex conjugate for classical algebras).
    pub fn adjoint(&self) -> AlgebraElement {
        let mut acc = Accumulator::default();
        for (x, c) in &self.terms {
            acc.extend(&c.conj(), basis_adjoint(self.tag, *x));
        }
        acc.finish(self.tag)
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    /// ħ → 0 limit of a quantum element, retagged to the classical algebra.
    pub fn classical_limit(&self) -> Result<AlgebraElement, AlgebraError> {
        if !self.tag.is_quantum() {
            return Err(AlgebraError::NotQuantum(self.tag));
        }
        let hbar = Symbol::hbar();
        let mut terms = BTreeMap::new();
        for (b, c) in &self.terms {
            if c.iter().any(|(m, _)| m.exponent(hbar) < 0) {
                return Err(AlgebraError::NegativeHbarPower);
            }
            let kept = c.filter(|m| m.exponent(hbar) == 0);
            if !kept.is_zero() {
                terms.insert(*b, kept);
            }
        }
        Ok(AlgebraElement { tag: self.tag.classical(), terms })
    }

    /// Reinterprets a classical element in the quantum algebra with the same
    /// basis (exp-left / normal-ordered quantization).
    pub fn quantize(&self) -> AlgebraElement {
        let tag = match self.tag {
            AlgebraTag::LadderClassical => AlgebraTag::LadderQuantum,
            AlgebraTag::CylinderClassical => AlgebraTag::CylinderQuantum,
            t => t,
        };
        AlgebraElement { tag, terms: self.terms.clone() }
    }
}

/// `[x, y]/(iħ)` for two quantum basis monomials.
fn quantum_commutator(tag: AlgebraTag, x: Basis, y: Basis) -> Vec<BasisTerm> {
    let mut acc = Accumulator::default();
    let one = ScalarCoeff::one();
    acc.extend(&one, basis_product(tag, x, y));
    acc.extend(&one.neg(), basis_product(tag, y, x));
    let factor = ScalarCoeff::term(GaussRational::imag(Rational::from_int(-1)), Monomial::power(Symbol::hbar(), -1));
    acc.map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(b, c)| (b, c.mul(&factor))).collect()
}

#[derive(Default)]
struct Accumulator {
    map: BTreeMap<Basis, ScalarCoeff>,
}

impl Accumulator {
    fn extend(&mut self, base: &ScalarCoeff, terms: Vec<BasisTerm>) {
        for (b, f) in terms {
            let slot = self.map.entry(b).or_default();
            for (m, v) in f.iter() {
                slot.add_scaled(base, v, m);
            }
        }
    }

    fn finish(self, tag: AlgebraTag) -> AlgebraElement {
        let terms = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgebraElement { tag, terms }
    }
}

/// Free-function form of [`AlgebraElement::bracket`] that also checks the
/// element's algebra against `kind`.
pub fn bracket(kind: LieBracketKind, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if a.tag() != kind.tag() {
        return Err(AlgebraError::AlgebraMismatch { left: kind.tag(), right: a.tag() });
    }
    a.bracket(b)
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.tag)?;
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?}){b:?}")?;
        }
        f.write_str("]")
    }
}
