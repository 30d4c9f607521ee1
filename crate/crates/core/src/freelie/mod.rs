//! The recursion over the free Lie algebra generated by abstract Fourier
//! components `H_m`, with symbolic summation indices.
//!
//! A term is `c · ω^w · {{…{{H_{f1}, H_{f2}}}…}} / Π d_j · e^{i·mode·ωt}`,
//! summed over every integer assignment of its indices for which each
//! constraint form is nonzero. Brackets are the algebra's `{{·,·}}`, so the
//! same terms specialize to classical and quantum algebras alike; rendering
//! converts to commutators through `{{A, B}} = [A, B]/(iħ)`.

mod fixtures;
mod form;
mod instantiate;
mod render;

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{kamiltonian, EngineError, GaugeChoice, SeriesAlgebra};
use crate::scalar::{GaussRational, Rational};

pub use fixtures::{corrected_s, reference_k, reference_s, parse_form, parse_tree, FixtureTerm};
pub use form::{IndexForm, Tree};
pub use instantiate::{instantiate, specialize, Instance};
pub use render::{render_series, RenderOptions};

/// Everything in a term except its coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Shape {
    pub tree: Tree,
    /// Denominator factors, sign-normalized and sorted.
    pub denoms: Vec<IndexForm>,
    /// Forms required to be nonzero, sign-normalized, sorted and deduplicated.
    pub constraints: Vec<IndexForm>,
    /// Time dependence `e^{i·mode·ωt}`.
    pub mode: IndexForm,
    pub omega_pow: i32,
}

impl Shape {
    pub fn num_vars(&self) -> usize {
        let forms = self.tree.leaves().into_iter().chain(&self.denoms).chain(&self.constraints).chain([&self.mode]);
        forms.map(IndexForm::num_vars).max().unwrap_or(0)
    }

    fn map_forms(&self, g: &impl Fn(&IndexForm) -> IndexForm) -> Shape {
        Shape {
            tree: self.tree.map_forms(g),
            denoms: self.denoms.iter().map(g).collect(),
            constraints: self.constraints.iter().map(g).collect(),
            mode: g(&self.mode),
            omega_pow: self.omega_pow,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeLieTerm {
    pub shape: Shape,
    pub coeff: GaussRational,
}

/// A finite sum of free-Lie terms with canonical shapes.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeLieSeries {
    terms: BTreeMap<Shape, GaussRational>,
}

impl std::fmt::Debug for FreeLieSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_series(self, &RenderOptions::default()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeLieError {
    #[error("order {requested} exceeds the configured maximum {max}")]
    OrderLimit { requested: usize, max: usize },
    #[error("denominator {form} vanishes at an allowed index assignment")]
    DivergentDenominator { form: String },
    #[error("bracket prefactor is not expressible in this algebra: {0}")]
    Unrepresentable(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl FreeLieSeries {
    pub fn zero() -> Self {
        FreeLieSeries::default()
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

    pub fn iter(&self) -> impl Iterator<Item = (&Shape, &GaussRational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<FreeLieTerm> {
        self.terms.iter().map(|(s, c)| FreeLieTerm { shape: s.clone(), coeff: c.clone() }).collect()
    }

    /// Adds a term after canonicalizing it.
    pub fn push(&mut self, shape: Shape, coeff: GaussRational) {
        if let Some((s, c)) = canonicalize_term(shape, coeff) {
            self.push_canonical(s, c);
        }
    }

    fn push_canonical(&mut self, shape: Shape, coeff: GaussRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&shape) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&shape);
                }
            }
            None => {
                self.terms.insert(shape, coeff);
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = FreeLieTerm>>(it: I) -> Self {
        let mut s = FreeLieSeries::zero();
        for t in it {
            s.push(t.shape, t.coeff);
        }
        s
    }

    pub fn add(&self, o: &FreeLieSeries) -> FreeLieSeries {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.push_canonical(s.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, q: &GaussRational) -> FreeLieSeries {
        if q.is_zero() {
            return FreeLieSeries::zero();
        }
        FreeLieSeries { terms: self.terms.iter().map(|(s, c)| (s.clone(), c * q)).collect() }
    }

    /// Whether every term is time independent.
    pub fn is_time_independent(&self) -> bool {
        self.terms.keys().all(|s| s.mode.is_zero())
    }

    /// `{{self, o}}` with fresh indices for `o`.
    pub fn bracket(&self, o: &FreeLieSeries) -> FreeLieSeries {
        let mut r = FreeLieSeries::zero();
        for (sa, ca) in &self.terms {
            let off = sa.num_vars();
            for (sb, cb) in &o.terms {
                let sb = sb.map_forms(&|f| f.shift(off));
                let mut denoms = sa.denoms.clone();
                denoms.extend(sb.denoms);
                let mut constraints = sa.constraints.clone();
                constraints.extend(sb.constraints);
                let shape = Shape {
                    tree: Tree::node(sa.tree.clone(), sb.tree),
                    denoms,
                    constraints,
                    mode: sa.mode.add(&sb.mode),
                    omega_pow: sa.omega_pow + sb.omega_pow,
                };
                r.push(shape, ca * cb);
            }
        }
        r
    }

    /// Drops the time-average: removes static terms and restricts the rest
    /// to assignments with nonzero mode.
    pub fn osc(&self) -> FreeLieSeries {
        let mut r = FreeLieSeries::zero();
        for (s, c) in &self.terms {
            if s.mode.is_zero() {
                continue;
            }
            let mut s = s.clone();
            s.constraints.push(s.mode.clone());
            r.push(s, c.clone());
        }
        r
    }

    /// The time average: the mode is solved for its last unit-coefficient index.
    pub fn bar(&self) -> Result<FreeLieSeries, EngineError> {
        let mut r = FreeLieSeries::zero();
        for (s, c) in &self.terms {
            if s.mode.is_zero() {
                r.push_canonical(s.clone(), c.clone());
                continue;
            }
            let (v, k) = s
                .mode
                .vars()
                .filter(|(_, k)| k.abs() == 1)
                .last()
                .ok_or_else(|| EngineError::Other(format!("cannot solve {} = 0 for a single index", s.mode)))?;
            // m_v = -k·(mode - k·m_v)
            let rest = s.mode.substitute(v, &IndexForm::zero());
            let sub = rest.scale(-k);
            let mut t = s.map_forms(&|f| f.substitute(v, &sub));
            t.mode = IndexForm::zero();
            r.push(t, c.clone());
        }
        Ok(r)
    }

    /// `∫dt` of a series whose terms all carry their mode as a constraint.
    pub fn integrate(&self) -> Result<FreeLieSeries, EngineError> {
        let minus_i = GaussRational::imag(Rational::from_int(-1));
        let mut r = FreeLieSeries::zero();
        for (s, c) in &self.terms {
            let (m, sign) = s.mode.normalized();
            if m.is_zero() || !s.constraints.contains(&m) {
                return Err(crate::fourier::FourierError::SecularTerm.into());
            }
            let mut t = s.clone();
            t.denoms.push(m);
            t.omega_pow -= 1;
            r.push(t, (c * &minus_i).scale(&Rational::from_int(sign as i64)));
        }
        Ok(r)
    }

    /// `d/dt`; the mode must cancel against a denominator factor.
    pub fn derivative(&self) -> Result<FreeLieSeries, EngineError> {
        let mut r = FreeLieSeries::zero();
        for (s, c) in &self.terms {
            if s.mode.is_zero() {
                continue;
            }
            let (m, sign) = s.mode.normalized();
            let pos = s.denoms.iter().position(|d| *d == m).ok_or_else(|| {
                EngineError::Other(format!("d/dt of a term without a matching {m} denominator"))
            })?;
            let mut t = s.clone();
            t.denoms.remove(pos);
            t.omega_pow += 1;
            r.push(t, (c * &GaussRational::I).scale(&Rational::from_int(sign as i64)));
        }
        Ok(r)
    }

    /// Value at `t = 0`, as a time-independent series.
    pub fn at_origin(&self) -> FreeLieSeries {
        let mut r = FreeLieSeries::zero();
        for (s, c) in &self.terms {
            let mut t = s.clone();
            t.mode = IndexForm::zero();
            r.push(t, c.clone());
        }
        r
    }
}

/// Canonical representative of a term under child swaps (antisymmetry) and
/// renaming of summation indices, or `None` if the term vanishes.
pub fn canonicalize_term(shape: Shape, coeff: GaussRational) -> Option<(Shape, GaussRational)> {
    if coeff.is_zero() || shape.tree.has_trivial_bracket() {
        return None;
    }
    if shape.constraints.iter().chain(&shape.denoms).any(IndexForm::is_zero) {
        return None;
    }
    let n = shape.num_vars();
    let mut best: Option<(Shape, i32)> = None;
    for (tree, sign) in shape.tree.orderings() {
        let perm = first_appearance(&tree, &shape, n);
        let g = |f: &IndexForm| f.relabel(&perm);
        let mut s = sign;
        let tree = tree.map_forms(&g);
        let mut denoms: Vec<IndexForm> = shape
            .denoms
            .iter()
            .map(|d| {
                let (d, k) = g(d).normalized();
                s *= k;
                d
            })
            .collect();
        denoms.sort();
        let constraints: BTreeSet<IndexForm> = shape.constraints.iter().map(|c| g(c).normalized().0).collect();
        let cand = Shape {
            tree,
            denoms,
            constraints: constraints.into_iter().collect(),
            mode: g(&shape.mode),
            omega_pow: shape.omega_pow,
        };
        if best.as_ref().is_none_or(|(b, _)| cand < *b) {
            best = Some((cand, s));
        }
    }
    let (shape, s) = best?;
    Some((shape, coeff.scale(&Rational::from_int(s as i64))))
}

/// Renumbering by first appearance in a left-to-right leaf walk, with each
/// index's sign chosen so its first coefficient is positive.
fn first_appearance(tree: &Tree, shape: &Shape, n: usize) -> Vec<(usize, i32)> {
    let mut perm: Vec<Option<(usize, i32)>> = vec![None; n];
    let mut next = 0;
    let rest = shape.denoms.iter().chain(&shape.constraints).chain([&shape.mode]);
    for f in tree.leaves().into_iter().chain(rest) {
        for (v, k) in f.vars() {
            if perm[v].is_none() {
                perm[v] = Some((next, k.signum()));
                next += 1;
            }
        }
    }
    perm.into_iter()
        .map(|p| {
            p.unwrap_or_else(|| {
                next += 1;
                (next - 1, 1)
            })
        })
        .collect()
}

/// The free Lie algebra context for the engine.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeLie;

impl FreeLie {
    /// `H = H_0 + Σ_{m1≠0} H_{m1} e^{i m1 ωt}`.
    pub fn hamiltonian() -> FreeLieSeries {
        let mut h = FreeLieSeries::zero();
        let zero = Shape {
            tree: Tree::leaf(IndexForm::zero()),
            denoms: vec![],
            constraints: vec![],
            mode: IndexForm::zero(),
            omega_pow: 0,
        };
        let m1 = IndexForm::var(0);
        let osc = Shape {
            tree: Tree::leaf(m1.clone()),
            denoms: vec![],
            constraints: vec![m1.clone()],
            mode: m1,
            omega_pow: 0,
        };
        h.push(zero, GaussRational::ONE);
        h.push(osc, GaussRational::ONE);
        h
    }
}

impl SeriesAlgebra for FreeLie {
    type Series = FreeLieSeries;
    type Static = FreeLieSeries;

    fn series_zero(&self) -> FreeLieSeries {
        FreeLieSeries::zero()
    }

    fn series_is_zero(&self, x: &FreeLieSeries) -> bool {
        x.is_zero()
    }

    fn series_add(&self, a: &FreeLieSeries, b: &FreeLieSeries) -> Result<FreeLieSeries, EngineError> {
        Ok(a.add(b))
    }

    fn series_scale(&self, x: &FreeLieSeries, q: &Rational) -> FreeLieSeries {
        x.scale(&GaussRational::real(q.clone()))
    }

    fn lie(&self, s: &FreeLieSeries, x: &FreeLieSeries) -> Result<FreeLieSeries, EngineError> {
        Ok(s.bracket(x))
    }

    fn osc(&self, x: &FreeLieSeries) -> FreeLieSeries {
        x.osc()
    }

    fn average(&self, x: &FreeLieSeries) -> FreeLieSeries {
        // Only reached on series whose oscillating part vanishes.
        x.bar().expect("unit-coefficient mode")
    }

    fn integrate(&self, x: &FreeLieSeries) -> Result<FreeLieSeries, EngineError> {
        x.integrate()
    }

    fn derivative(&self, x: &FreeLieSeries) -> Result<FreeLieSeries, EngineError> {
        x.derivative()
    }

    fn gauge_constant(&self, s_osc: &FreeLieSeries, gauge: &GaugeChoice) -> Result<FreeLieSeries, EngineError> {
        match gauge {
            GaugeChoice::VanVleck => Ok(FreeLieSeries::zero()),
            GaugeChoice::FloquetMagnus { t0 } if t0.is_zero() => Ok(s_osc.at_origin().scale(&GaussRational::from_int(-1))),
            g => Err(EngineError::UnsupportedGauge(g.to_string())),
        }
    }
}

/// Which listing [`generate_closed_form`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    K,
    S,
}

pub const DEFAULT_MAX_ORDER: usize = 5;

/// `K^(0) … K^(N)` or `S^(1) … S^(N)` as closed-form index sums.
pub fn generate_closed_form(
    order: usize,
    target: Target,
    gauge: &GaugeChoice,
    max_order: usize,
) -> Result<Vec<FreeLieSeries>, FreeLieError> {
    if order > max_order {
        return Err(FreeLieError::OrderLimit { requested: order, max: max_order });
    }
    match target {
        Target::K => Ok(kamiltonian(&FreeLie, &FreeLie::hamiltonian(), order, gauge)?.k),
        Target::S => {
            let n = order.saturating_sub(1);
            let r = kamiltonian(&FreeLie, &FreeLie::hamiltonian(), n, gauge)?;
            Ok(r.s[1..=order].to_vec())
        }
    }
}
