//! Finite Fourier series `Σ_m F_m e^{imωt}` over an algebra, with the time
//! average, oscillating part, derivative and integral used by the recursion.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, AlgebraError, Factor, LieAlgebra};
use crate::scalar::{GaussRational, Rational};

/// Finite map from Fourier index to a nonzero algebra element.
#[derive(Clone, PartialEq, Debug)]
pub struct FourierSeries<E> {
    modes: BTreeMap<i32, E>,
}

/// Fourier series over the symbolic algebras.
pub type FourierElement = FourierSeries<AlgebraElement>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FourierError {
    #[error("secular term: integrand has a nonzero time average")]
    SecularTerm,
    #[error("phase e^(2πi·{0}) is not an exact Gaussian rational; use a multiple of 1/4")]
    InexactPhase(Rational),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl<E> Default for FourierSeries<E> {
    fn default() -> Self {
        FourierSeries { modes: BTreeMap::new() }
    }
}

/// `e^{2πiθ}` for `θ` a multiple of 1/4.
pub fn exact_phase(theta: &Rational) -> Result<GaussRational, FourierError> {
    let quarter = theta * &Rational::from_int(4);
    if !quarter.is_integer() {
        return Err(FourierError::InexactPhase(theta.clone()));
    }
    let k = quarter.numer() % num_bigint::BigInt::from(4);
    let k: i32 = i32::try_from(k).expect("residue mod 4 fits");
    Ok(GaussRational::i_pow(k))
}

impl<E: Clone + PartialEq + std::fmt::Debug> FourierSeries<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Time-independent series with `x` at mode 0.
    pub fn constant<A: LieAlgebra<Element = E>>(alg: &A, x: E) -> Self {
        Self::single(alg, 0, x)
    }

    pub fn single<A: LieAlgebra<Element = E>>(alg: &A, m: i32, x: E) -> Self {
        let mut f = Self::zero();
        f.insert(alg, m, x);
        f
    }

    pub fn from_modes<A, I>(alg: &A, it: I) -> Result<Self, AlgebraError>
    where
        A: LieAlgebra<Element = E>,
        I: IntoIterator<Item = (i32, E)>,
    {
        let mut f = Self::zero();
        for (m, x) in it {
            f.add_mode(alg, m, &x)?;
        }
        Ok(f)
    }

    fn insert<A: LieAlgebra<Element = E>>(&mut self, alg: &A, m: i32, x: E) {
        if alg.is_zero(&x) {
            self.modes.remove(&m);
        } else {
            self.modes.insert(m, x);
        }
    }

    pub fn add_mode<A: LieAlgebra<Element = E>>(&mut self, alg: &A, m: i32, x: &E) -> Result<(), AlgebraError> {
        let sum = match self.modes.get(&m) {
            Some(y) => alg.add(y, x)?,
            None => x.clone(),
        };
        self.insert(alg, m, sum);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn mode(&self, m: i32) -> Option<&E> {
        self.modes.get(&m)
    }

    pub fn modes(&self) -> impl Iterator<Item = (i32, &E)> {
        self.modes.iter().map(|(m, x)| (*m, x))
    }

    pub fn support(&self) -> Vec<i32> {
        self.modes.keys().copied().collect()
    }

    pub fn is_time_independent(&self) -> bool {
        self.modes.keys().all(|m| *m == 0)
    }

    /// Time average: the m = 0 mode.
    pub fn bar<A: LieAlgebra<Element = E>>(&self, alg: &A) -> E {
        self.modes.get(&0).cloned().unwrap_or_else(|| alg.zero())
    }

    /// Drops the m = 0 mode.
    pub fn osc(&self) -> Self {
        let mut f = self.clone();
        f.modes.remove(&0);
        f
    }

    pub fn add<A: LieAlgebra<Element = E>>(&self, alg: &A, o: &Self) -> Result<Self, AlgebraError> {
        let mut r = self.clone();
        for (m, x) in &o.modes {
            r.add_mode(alg, *m, x)?;
        }
        Ok(r)
    }

    pub fn neg<A: LieAlgebra<Element = E>>(&self, alg: &A) -> Self {
        FourierSeries { modes: self.modes.iter().map(|(m, x)| (*m, alg.neg(x))).collect() }
    }

    pub fn scale<A: LieAlgebra<Element = E>>(&self, alg: &A, f: &Factor) -> Self {
        let mut r = Self::zero();
        for (m, x) in &self.modes {
            r.insert(alg, *m, alg.scale(x, f));
        }
        r
    }

    /// `d/dt`: mode m is multiplied by `imω`.
    pub fn ddt<A: LieAlgebra<Element = E>>(&self, alg: &A) -> Self {
        let mut r = Self::zero();
        for (m, x) in &self.modes {
            if *m != 0 {
                let f = Factor::new(GaussRational::imag(Rational::from_int(*m as i64)), 1);
                r.insert(alg, *m, alg.scale(x, &f));
            }
        }
        r
    }

    /// `∫dt` of a zero-mean series: mode m is multiplied by `-i/(mω)` and
    /// `gauge_constant` becomes the m = 0 mode.
    pub fn integrate_osc<A: LieAlgebra<Element = E>>(&self, alg: &A, gauge_constant: &E) -> Result<Self, FourierError> {
        if self.modes.contains_key(&0) {
            return Err(FourierError::SecularTerm);
        }
        let mut r = Self::zero();
        for (m, x) in &self.modes {
            let f = Factor::new(GaussRational::imag(Rational::new(-1, *m as i64)), -1);
            r.insert(alg, *m, alg.scale(x, &f));
        }
        r.insert(alg, 0, gauge_constant.clone());
        Ok(r)
    }

    /// Index convolution: mode m of the result is `Σ_{m'} [F_{m'}, G_{m-m'}]`.
    pub fn bracket<A: LieAlgebra<Element = E>>(&self, alg: &A, o: &Self) -> Result<Self, AlgebraError> {
        let mut r = Self::zero();
        for (m1, x) in &self.modes {
            for (m2, y) in &o.modes {
                let b = alg.bracket(x, y)?;
                if !alg.is_zero(&b) {
                    r.add_mode(alg, m1 + m2, &b)?;
                }
            }
        }
        Ok(r)
    }

    /// Value at `t = θ·T`, exact for θ a multiple of 1/4.
    pub fn eval_at_phase<A: LieAlgebra<Element = E>>(&self, alg: &A, theta: &Rational) -> Result<E, FourierError> {
        let mut acc = alg.zero();
        for (m, x) in &self.modes {
            let ph = exact_phase(&(theta * &Rational::from_int(*m as i64)))?;
            acc = alg.add(&acc, &alg.scale(x, &Factor::new(ph, 0)))?;
        }
        Ok(acc)
    }

    /// `modes[-m] = adjoint(modes[m])` for every m.
    pub fn is_hermitian<A: LieAlgebra<Element = E>>(&self, alg: &A) -> bool {
        self.modes.iter().all(|(m, x)| match self.modes.get(&-m) {
            Some(y) => alg.adjoint(x) == *y,
            None => false,
        })
    }

    /// Applies `f` to every mode, keeping the result canonical.
    pub fn map<A: LieAlgebra<Element = E>, F: Fn(i32, &E) -> E>(&self, alg: &A, f: F) -> Self {
        let mut r = Self::zero();
        for (m, x) in &self.modes {
            r.insert(alg, *m, f(*m, x));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraTag, Basis, LieBracketKind};
    use crate::scalar::{Monomial, ScalarCoeff, Symbol};

    const K: LieBracketKind = LieBracketKind::QuantumLadder;

    fn lad(j: u16, k: u16) -> AlgebraElement {
        AlgebraElement::basis(AlgebraTag::LadderQuantum, Basis::ladder(j, k))
    }

    fn sample() -> FourierElement {
        FourierElement::from_modes(&K, [(0, lad(1, 1)), (1, lad(0, 1)), (-1, lad(1, 0)), (2, lad(0, 2)), (-2, lad(2, 0))])
            .unwrap()
    }

    #[test]
    fn bar_and_osc() {
        let f = sample();
        assert_eq!(f.bar(&K), lad(1, 1));
        assert!(f.osc().bar(&K).is_zero());
        assert_eq!(f.osc().osc(), f.osc());
        assert_eq!(f.osc().add(&K, &FourierElement::constant(&K, f.bar(&K))).unwrap(), f);
    }

    #[test]
    fn integrate_then_ddt_is_identity() {
        let f = sample().osc();
        let g = f.integrate_osc(&K, &K.zero()).unwrap();
        assert_eq!(g.ddt(&K), f);
        assert_eq!(sample().ddt(&K).integrate_osc(&K, &K.zero()).unwrap(), sample().osc());
    }

    #[test]
    fn integrate_single_mode() {
        let x = lad(0, 1);
        let f = FourierElement::from_modes(&K, [(1, x.clone()), (-1, x.adjoint())]).unwrap();
        let g = f.integrate_osc(&K, &K.zero()).unwrap();
        let inv_w = Monomial::power(Symbol::omega(), -1);
        let c = |s: i64| ScalarCoeff::term(GaussRational::imag(Rational::from_int(s)), inv_w.clone());
        assert_eq!(g.mode(1).unwrap(), &x.scale(&c(-1)));
        assert_eq!(g.mode(-1).unwrap(), &x.adjoint().scale(&c(1)));
    }

    #[test]
    fn secular_term_rejected() {
        assert_eq!(sample().integrate_osc(&K, &K.zero()), Err(FourierError::SecularTerm));
    }

    #[test]
    fn ddt_of_mode_two() {
        let f = FourierElement::single(&K, 2, lad(0, 1));
        let expected = lad(0, 1).scale(&ScalarCoeff::term(
            GaussRational::imag(Rational::from_int(2)),
            Monomial::symbol(Symbol::omega()),
        ));
        assert_eq!(f.ddt(&K).mode(2).unwrap(), &expected);
        assert!(FourierElement::constant(&K, lad(1, 1)).ddt(&K).is_zero());
    }

    #[test]
    fn convolution_support() {
        let f = FourierElement::single(&K, 1, lad(0, 1));
        let g = FourierElement::single(&K, -1, lad(1, 0));
        assert_eq!(f.bracket(&K, &g).unwrap().support(), vec![0]);
    }

    #[test]
    fn phases_at_quarter_periods() {
        assert_eq!(exact_phase(&Rational::new(1, 4)).unwrap(), GaussRational::I);
        assert_eq!(exact_phase(&Rational::new(-1, 2)).unwrap(), GaussRational::from_int(-1));
        assert!(exact_phase(&Rational::new(1, 3)).is_err());
    }
}
