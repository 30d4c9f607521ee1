//! Exact scalar arithmetic: rationals, Gaussian rationals, interned symbols
//! and the Laurent-polynomial coefficient ring built from them.

mod coeff;
mod gauss;
mod rational;
mod symbol;

pub use coeff::{Bindings, EvalError, ScalarCoeff, Term};
pub use gauss::GaussRational;
pub use rational::{binomial, factorial, ParseRationalError, Rational};
pub use symbol::{Monomial, Symbol, SymbolError};
