use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FreeLieError, FreeLieSeries, IndexForm, Shape, Tree};
use crate::algebra::{Factor, LieAlgebra, MatrixAlgebra};
use crate::fourier::FourierSeries;
use crate::scalar::Rational;

/// Concrete Hermitian Fourier components `H_m`, `|m| ≤ max_mode`, with
/// `H_{-m} = H_m†`, and numeric `ω` (`ħ = 1`).
#[derive(Clone, Debug)]
pub struct Instance {
    pub dim: usize,
    pub max_mode: i32,
    pub omega: f64,
    pub mats: BTreeMap<i32, DMatrix<Complex64>>,
}

impl Instance {
    pub fn random(dim: usize, max_mode: i32, omega: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            DMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        };
        let mut mats = BTreeMap::new();
        let h0 = draw(&mut rng);
        mats.insert(0, (&h0 + h0.adjoint()) * Complex64::new(0.5, 0.0));
        for m in 1..=max_mode {
            let h = draw(&mut rng);
            mats.insert(-m, h.adjoint());
            mats.insert(m, h);
        }
        Instance { dim, max_mode, omega, mats }
    }

    /// The same components as a matrix-valued Fourier series.
    pub fn hamiltonian(&self) -> FourierSeries<DMatrix<Complex64>> {
        let alg = MatrixAlgebra::new(self.dim, self.omega, 1.0);
        FourierSeries::from_modes(&alg, self.mats.clone()).expect("square matrices of one size")
    }
}

/// Assignments of a term's indices that satisfy its constraints and keep
/// every leaf index inside `allowed`.
fn for_each_assignment(
    shape: &Shape,
    allowed: &dyn Fn(i64) -> bool,
    bound: i32,
    f: &mut dyn FnMut(&[i32]) -> Result<(), FreeLieError>,
) -> Result<(), FreeLieError> {
    let n = shape.num_vars();
    let leaves: Vec<&IndexForm> = shape.tree.leaves();
    // Leaves and constraints grouped by the prefix length that determines them.
    let mut leaf_at: Vec<Vec<&IndexForm>> = vec![Vec::new(); n + 1];
    for l in &leaves {
        leaf_at[l.num_vars()].push(l);
    }
    let mut cons_at: Vec<Vec<&IndexForm>> = vec![Vec::new(); n + 1];
    for c in &shape.constraints {
        cons_at[c.num_vars()].push(c);
    }
    // An index that is itself a leaf ranges over the allowed modes; others may
    // reach sums of them.
    let ranges: Vec<i32> = (0..n)
        .map(|v| if leaves.iter().any(|l| l.is_single() && l.coeff(v).abs() == 1) { bound } else { bound * leaves.len() as i32 })
        .collect();
    let mut vals = vec![0i32; n];
    let ok = |vals: &[i32], k: usize| {
        leaf_at[k].iter().all(|l| allowed(l.eval(vals))) && cons_at[k].iter().all(|c| c.eval(vals) != 0)
    };
    if !ok(&vals, 0) {
        return Ok(());
    }
    fn rec(
        v: usize,
        vals: &mut Vec<i32>,
        ranges: &[i32],
        ok: &dyn Fn(&[i32], usize) -> bool,
        f: &mut dyn FnMut(&[i32]) -> Result<(), FreeLieError>,
    ) -> Result<(), FreeLieError> {
        if v == vals.len() {
            return f(vals);
        }
        for x in -ranges[v]..=ranges[v] {
            vals[v] = x;
            if ok(vals, v + 1) {
                rec(v + 1, vals, ranges, ok, f)?;
            }
        }
        vals[v] = 0;
        Ok(())
    }
    rec(0, &mut vals, &ranges, &ok, f)
}

fn denominator(shape: &Shape, vals: &[i32]) -> Result<i64, FreeLieError> {
    let mut d = 1i64;
    for f in &shape.denoms {
        let x = f.eval(vals);
        if x == 0 {
            return Err(FreeLieError::DivergentDenominator { form: f.to_string() });
        }
        d *= x;
    }
    Ok(d)
}

fn eval_tree(t: &Tree, vals: &[i32], inst: &Instance) -> DMatrix<Complex64> {
    match t {
        Tree::Leaf(f) => inst.mats[&(f.eval(vals) as i32)].clone(),
        Tree::Node(a, b) => {
            let (x, y) = (eval_tree(a, vals, inst), eval_tree(b, vals, inst));
            // {{x, y}} = [x, y]/(iħ) with ħ = 1
            (&x * &y - &y * &x) * Complex64::new(0.0, -1.0)
        }
    }
}

/// Numeric value of a closed form at phase `ωt = phase`.
pub fn instantiate(x: &FreeLieSeries, inst: &Instance, phase: f64) -> Result<DMatrix<Complex64>, FreeLieError> {
    let mut total = DMatrix::zeros(inst.dim, inst.dim);
    let m = inst.max_mode as i64;
    for (shape, c) in x.iter() {
        let c = c.to_complex() * inst.omega.powi(shape.omega_pow);
        for_each_assignment(shape, &|l| l.abs() <= m, inst.max_mode, &mut |vals| {
            let d = denominator(shape, vals)? as f64;
            let ph = Complex64::from_polar(1.0, shape.mode.eval(vals) as f64 * phase);
            total += eval_tree(&shape.tree, vals, inst) * (c * ph / d);
            Ok(())
        })?;
    }
    Ok(total)
}

/// Exact substitution of a concrete Fourier series into a closed form.
pub fn specialize<A: LieAlgebra>(
    alg: &A,
    x: &FreeLieSeries,
    h: &FourierSeries<A::Element>,
) -> Result<FourierSeries<A::Element>, FreeLieError> {
    let support = h.support();
    let bound = support.iter().map(|m| m.abs()).max().unwrap_or(0);
    let mut out = FourierSeries::zero();
    for (shape, c) in x.iter() {
        for_each_assignment(shape, &|l| support.contains(&(l as i32)), bound, &mut |vals| {
            let d = denominator(shape, vals)?;
            let v = eval_exact(alg, &shape.tree, vals, h)?;
            let f = Factor::new(c.scale(&Rational::new(1, d)), shape.omega_pow);
            let mode = shape.mode.eval(vals) as i32;
            out.add_mode(alg, mode, &alg.scale(&v, &f)).map_err(|e| FreeLieError::Unrepresentable(e.to_string()))
        })?;
    }
    Ok(out)
}

fn eval_exact<A: LieAlgebra>(alg: &A, t: &Tree, vals: &[i32], h: &FourierSeries<A::Element>) -> Result<A::Element, FreeLieError> {
    match t {
        Tree::Leaf(f) => Ok(h.mode(f.eval(vals) as i32).cloned().unwrap_or_else(|| alg.zero())),
        Tree::Node(a, b) => {
            let x = eval_exact(alg, a, vals, h)?;
            let y = eval_exact(alg, b, vals, h)?;
            alg.bracket(&x, &y).map_err(|e| FreeLieError::Unrepresentable(e.to_string()))
        }
    }
}
