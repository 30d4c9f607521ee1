//! The coupled recursion for the Kamiltonian `K^(n)` and the micromotion
//! generator `S^(n)`.
//!
//! The recursion only needs a handful of operations on time-periodic objects,
//! collected in [`SeriesAlgebra`]. Every [`LieAlgebra`] gets them through
//! [`FourierSeries`]; the free-Lie module provides its own implementation.

mod filter;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraError, Factor, LieAlgebra};
use crate::fourier::{FourierError, FourierSeries};
use crate::scalar::{ParseRationalError, Rational};

pub use filter::{order_filter, BasisPattern, OrderReport};

/// Integration-constant policy for `S^(n)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub enum GaugeChoice {
    /// `S̄ = 0` at every order.
    #[default]
    VanVleck,
    /// `S(t0) = 0` with `t0` given as a fraction of the drive period.
    FloquetMagnus { t0: Rational },
}

impl fmt::Display for GaugeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeChoice::VanVleck => f.write_str("van-vleck"),
            GaugeChoice::FloquetMagnus { t0 } if t0.is_zero() => f.write_str("floquet-magnus"),
            GaugeChoice::FloquetMagnus { t0 } => write!(f, "floquet-magnus(t0={t0})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaugeParseError {
    #[error("unknown gauge `{0}` (expected van-vleck or floquet-magnus)")]
    Unknown(String),
    #[error(transparent)]
    T0(#[from] ParseRationalError),
}

impl GaugeChoice {
    /// Parses a gauge name, with `t0` used only for floquet-magnus.
    pub fn parse(name: &str, t0: Option<&str>) -> Result<Self, GaugeParseError> {
        match name {
            "van-vleck" | "vanvleck" => Ok(GaugeChoice::VanVleck),
            "floquet-magnus" | "floquetmagnus" => {
                let t0 = t0.map(Rational::from_str).transpose()?.unwrap_or(Rational::ZERO);
                Ok(GaugeChoice::FloquetMagnus { t0 })
            }
            other => Err(GaugeParseError::Unknown(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("at order {order}: {source}")]
    AtOrder {
        order: usize,
        #[source]
        source: Box<EngineError>,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error("K is not time independent (engine invariant violated)")]
    NotTimeIndependent,
    #[error("gauge {0} is not supported by this algebra")]
    UnsupportedGauge(String),
    #[error("requested order {requested} exceeds the configured maximum {max}")]
    OrderLimit { requested: usize, max: usize },
    #[error("{0}")]
    Other(String),
}

impl EngineError {
    fn at(self, order: usize) -> EngineError {
        match self {
            e @ EngineError::AtOrder { .. } => e,
            e => EngineError::AtOrder { order, source: Box::new(e) },
        }
    }

    /// The innermost error, with order context stripped.
    pub fn root(&self) -> &EngineError {
        match self {
            EngineError::AtOrder { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            EngineError::AtOrder { order, .. } => Some(*order),
            _ => None,
        }
    }
}

/// Operations on time-periodic objects required by the recursion.
pub trait SeriesAlgebra {
    /// A time-periodic object (`H`, `S^(n)`, `K^(n)_[k]`).
    type Series: Clone + PartialEq + fmt::Debug;
    /// A time-independent object (`K^(n)`).
    type Static: Clone + PartialEq + fmt::Debug;

    fn series_zero(&self) -> Self::Series;
    fn series_is_zero(&self, x: &Self::Series) -> bool;
    fn series_add(&self, a: &Self::Series, b: &Self::Series) -> Result<Self::Series, EngineError>;
    fn series_scale(&self, x: &Self::Series, q: &Rational) -> Self::Series;
    /// `L_S X`.
    fn lie(&self, s: &Self::Series, x: &Self::Series) -> Result<Self::Series, EngineError>;
    fn osc(&self, x: &Self::Series) -> Self::Series;
    fn average(&self, x: &Self::Series) -> Self::Static;
    /// `∫dt` of a zero-mean series with integration constant 0.
    fn integrate(&self, x: &Self::Series) -> Result<Self::Series, EngineError>;
    fn derivative(&self, x: &Self::Series) -> Result<Self::Series, EngineError>;
    /// Time-independent correction making `s_osc + correction` satisfy the gauge.
    fn gauge_constant(&self, s_osc: &Self::Series, gauge: &GaugeChoice) -> Result<Self::Series, EngineError>;
    /// Whether results are exact, so that invariants can be asserted by equality.
    fn is_exact(&self) -> bool {
        true
    }
}

impl<A: LieAlgebra> SeriesAlgebra for A {
    type Series = FourierSeries<A::Element>;
    type Static = A::Element;

    fn series_zero(&self) -> Self::Series {
        FourierSeries::zero()
    }

    fn series_is_zero(&self, x: &Self::Series) -> bool {
        x.is_zero()
    }

    fn series_add(&self, a: &Self::Series, b: &Self::Series) -> Result<Self::Series, EngineError> {
        Ok(a.add(self, b)?)
    }

    fn series_scale(&self, x: &Self::Series, q: &Rational) -> Self::Series {
        x.scale(self, &Factor::rational(q.clone()))
    }

    fn lie(&self, s: &Self::Series, x: &Self::Series) -> Result<Self::Series, EngineError> {
        Ok(s.bracket(self, x)?)
    }

    fn osc(&self, x: &Self::Series) -> Self::Series {
        x.osc()
    }

    fn average(&self, x: &Self::Series) -> Self::Static {
        x.bar(self)
    }

    fn integrate(&self, x: &Self::Series) -> Result<Self::Series, EngineError> {
        Ok(x.integrate_osc(self, &self.zero())?)
    }

    fn derivative(&self, x: &Self::Series) -> Result<Self::Series, EngineError> {
        Ok(x.ddt(self))
    }

    fn gauge_constant(&self, s_osc: &Self::Series, gauge: &GaugeChoice) -> Result<Self::Series, EngineError> {
        match gauge {
            GaugeChoice::VanVleck => Ok(FourierSeries::zero()),
            GaugeChoice::FloquetMagnus { t0 } => {
                let v = s_osc.eval_at_phase(self, t0)?;
                Ok(FourierSeries::constant(self, self.neg(&v)))
            }
        }
    }

    fn is_exact(&self) -> bool {
        LieAlgebra::is_exact(self)
    }
}

/// `L_S X = {{S, X}}` on Fourier data.
pub fn lie_derivative<A: SeriesAlgebra>(alg: &A, s: &A::Series, x: &A::Series) -> Result<A::Series, EngineError> {
    alg.lie(s, x)
}

/// Output of [`kamiltonian`].
#[derive(Clone, Debug, PartialEq)]
pub struct KamiltonianResult<A: SeriesAlgebra> {
    pub order: usize,
    /// `K^(0) … K^(N)`.
    pub k: Vec<A::Static>,
    /// `S^(0) … S^(N+1)`, with `S^(0) = 0`.
    pub s: Vec<A::Series>,
    /// Every cell `K^(n)_[k]` with `0 ≤ k ≤ n+1`, `n ≤ N`.
    pub knk: BTreeMap<(usize, usize), A::Series>,
    pub gauge: GaugeChoice,
}

impl<A: SeriesAlgebra> KamiltonianResult<A> {
    pub fn cell(&self, n: usize, k: usize) -> Option<&A::Series> {
        self.knk.get(&(n, k))
    }

    /// `S^(1) … S^(N+1)`.
    pub fn s_terms(&self) -> &[A::Series] {
        &self.s[1..]
    }
}

/// Runs the coupled recursion to order `n_max`:
///
/// ```text
/// K^(0)_[0] = H
/// K^(n)_[1] = Ṡ^(n+1) + L_{S^(n)} H
/// K^(n)_[k] = Σ_{m=0}^{n-1} (1/k) L_{S^(n-m)} K^(m)_[k-1]      1 < k ≤ n+1
/// S^(n+1)  = -∫dt osc(L_{S^(n)} H + Σ_{k≠1} K^(n)_[k])
/// ```
pub fn kamiltonian<A: SeriesAlgebra>(
    alg: &A,
    h: &A::Series,
    n_max: usize,
    gauge: &GaugeChoice,
) -> Result<KamiltonianResult<A>, EngineError> {
    let mut knk: BTreeMap<(usize, usize), A::Series> = BTreeMap::new();
    let mut s: Vec<A::Series> = vec![alg.series_zero()];
    let mut k_out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        step(alg, h, n, gauge, &mut knk, &mut s, &mut k_out).map_err(|e| e.at(n))?;
    }
    Ok(KamiltonianResult { order: n_max, k: k_out, s, knk, gauge: gauge.clone() })
}

fn step<A: SeriesAlgebra>(
    alg: &A,
    h: &A::Series,
    n: usize,
    gauge: &GaugeChoice,
    knk: &mut BTreeMap<(usize, usize), A::Series>,
    s: &mut Vec<A::Series>,
    k_out: &mut Vec<A::Static>,
) -> Result<(), EngineError> {
    knk.insert((n, 0), if n == 0 { h.clone() } else { alg.series_zero() });
    for k in 2..=n + 1 {
        let mut cell = alg.series_zero();
        let inv_k = Rational::new(1, k as i64);
        // K^(m)_[k-1] vanishes unless k-1 ≤ m+1
        for m in k.saturating_sub(2)..n {
            let prev = &knk[&(m, k - 1)];
            if alg.series_is_zero(prev) {
                continue;
            }
            let l = alg.lie(&s[n - m], prev)?;
            cell = alg.series_add(&cell, &alg.series_scale(&l, &inv_k))?;
        }
        knk.insert((n, k), cell);
    }

    let ls_h = alg.lie(&s[n], h)?;
    let mut x = ls_h.clone();
    for k in (0..=n + 1).filter(|k| *k != 1) {
        x = alg.series_add(&x, &knk[&(n, k)])?;
    }
    let s_osc = alg.series_scale(&alg.integrate(&alg.osc(&x))?, &Rational::from_int(-1));
    let s_next = alg.series_add(&s_osc, &alg.gauge_constant(&s_osc, gauge)?)?;

    let k1 = alg.series_add(&alg.derivative(&s_next)?, &ls_h)?;
    knk.insert((n, 1), k1);
    s.push(s_next);

    let mut total = alg.series_zero();
    for k in 0..=n + 1 {
        total = alg.series_add(&total, &knk[&(n, k)])?;
    }
    if alg.is_exact() && !alg.series_is_zero(&alg.osc(&total)) {
        return Err(EngineError::NotTimeIndependent);
    }
    k_out.push(alg.average(&total));
    Ok(())
}

/// Sign of the generator in a micromotion transformation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// `e^{L_S} X`: maps a lab-frame object into the Kamiltonian frame.
    IntoFrame,
    /// `e^{L_{-S}} X`: maps back out of it.
    OutOfFrame,
}

/// `e^{±L_S} X` truncated at total perturbative order `n_max`, where each
/// `S^(j)` counts as order `j`.
///
/// `s_terms[j]` is `S^(j)`; index 0 is ignored.
pub fn micromotion_dress<A: SeriesAlgebra>(
    alg: &A,
    x: &A::Series,
    s_terms: &[A::Series],
    n_max: usize,
    direction: Direction,
) -> Result<A::Series, EngineError> {
    let sign: i64 = match direction {
        Direction::IntoFrame => 1,
        Direction::OutOfFrame => -1,
    };
    // layer[o] = Σ over j_1+…+j_k = o of L_{S^(j_1)}…L_{S^(j_k)} X
    let mut layer: Vec<Option<A::Series>> = vec![None; n_max + 1];
    layer[0] = Some(x.clone());
    let mut result = x.clone();
    let mut fact = Rational::ONE;
    for depth in 1..=n_max {
        fact = &fact * &Rational::from_int(depth as i64);
        let mut next: Vec<Option<A::Series>> = vec![None; n_max + 1];
        for o in depth..=n_max {
            let mut acc: Option<A::Series> = None;
            for j in 1..=o.min(s_terms.len().saturating_sub(1)) {
                let Some(prev) = &layer[o - j] else { continue };
                let l = alg.lie(&s_terms[j], prev)?;
                if alg.series_is_zero(&l) {
                    continue;
                }
                acc = Some(match acc {
                    Some(a) => alg.series_add(&a, &l)?,
                    None => l,
                });
            }
            next[o] = acc;
        }
        if next.iter().all(Option::is_none) {
            break;
        }
        let coef = &Rational::from_int(if sign < 0 && depth % 2 == 1 { -1 } else { 1 }) / &fact;
        for v in next.iter().flatten() {
            result = alg.series_add(&result, &alg.series_scale(v, &coef))?;
        }
        layer = next;
    }
    Ok(result)
}
