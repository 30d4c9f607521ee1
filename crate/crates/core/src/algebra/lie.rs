use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{AlgebraElement, AlgebraError, LieBracketKind};
use crate::scalar::{GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

/// Scalar factor the series layer applies to algebra elements: an exact
/// Gaussian rational times a power of ω (from `d/dt` and `∫dt`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub value: GaussRational,
    pub omega_pow: i32,
}

impl Factor {
    pub fn rational(q: Rational) -> Self {
        Factor { value: GaussRational::real(q), omega_pow: 0 }
    }

    pub fn new(value: GaussRational, omega_pow: i32) -> Self {
        Factor { value, omega_pow }
    }

    pub fn to_coeff(&self) -> ScalarCoeff {
        ScalarCoeff::term(self.value.clone(), Monomial::power(Symbol::omega(), self.omega_pow))
    }
}

/// The bracket interface the Fourier layer and the recursion are generic over.
pub trait LieAlgebra {
    type Element: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Element;
    fn is_zero(&self, x: &Self::Element) -> bool;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, AlgebraError>;
    fn scale(&self, x: &Self::Element, f: &Factor) -> Self::Element;
    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, AlgebraError>;
    fn adjoint(&self, x: &Self::Element) -> Self::Element;

    fn neg(&self, x: &Self::Element) -> Self::Element {
        self.scale(x, &Factor::rational(Rational::from_int(-1)))
    }

    /// False for floating-point algebras, where invariants hold only up to
    /// rounding.
    fn is_exact(&self) -> bool {
        true
    }
}

impl LieAlgebra for LieBracketKind {
    type Element = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.tag())
    }

    fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.is_zero()
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        a.add(b)
    }

    fn scale(&self, x: &AlgebraElement, f: &Factor) -> AlgebraElement {
        if f.omega_pow == 0 {
            x.scale_gauss(&f.value)
        } else {
            x.scale(&f.to_coeff())
        }
    }

    fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        super::element::bracket(*self, a, b)
    }

    fn adjoint(&self, x: &AlgebraElement) -> AlgebraElement {
        x.adjoint()
    }

    fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        x.neg()
    }
}

/// Numeric quantum algebra of `dim × dim` complex matrices with bracket
/// `[A, B]/(iħ)` and fixed numeric ω, ħ.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebra {
    pub dim: usize,
    pub omega: f64,
    pub hbar: f64,
}

impl MatrixAlgebra {
    pub fn new(dim: usize, omega: f64, hbar: f64) -> Self {
        MatrixAlgebra { dim, omega, hbar }
    }

    fn check(&self, a: &DMatrix<Complex64>) -> Result<(), AlgebraError> {
        if a.nrows() == self.dim && a.ncols() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch(self.dim, a.nrows()))
        }
    }
}

impl LieAlgebra for MatrixAlgebra {
    type Element = DMatrix<Complex64>;

    fn zero(&self) -> DMatrix<Complex64> {
        DMatrix::zeros(self.dim, self.dim)
    }

    fn is_zero(&self, x: &DMatrix<Complex64>) -> bool {
        x.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    fn add(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    fn scale(&self, x: &DMatrix<Complex64>, f: &Factor) -> DMatrix<Complex64> {
        x * (f.value.to_complex() * self.omega.powi(f.omega_pow))
    }

    fn bracket(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let c = a * b - b * a;
        Ok(c * Complex64::new(0.0, -1.0 / self.hbar))
    }

    fn adjoint(&self, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        x.adjoint()
    }

    fn is_exact(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_bracket_is_antisymmetric() {
        let alg = MatrixAlgebra::new(2, 1.0, 0.5);
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0)));
        let b = a.adjoint();
        let ab = alg.bracket(&a, &b).unwrap();
        let ba = alg.bracket(&b, &a).unwrap();
        assert!((ab + ba).norm() < 1e-14);
    }

    #[test]
    fn factor_carries_omega() {
        let alg = MatrixAlgebra::new(1, 3.0, 1.0);
        let x = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        let y = alg.scale(&x, &Factor::new(GaussRational::I, -1));
        assert!((y[(0, 0)] - Complex64::new(0.0, 1.0 / 3.0)).norm() < 1e-15);
    }
}
