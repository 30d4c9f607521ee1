//! Numerical Floquet spectrum of the driven Duffing oscillator in its
//! rotating frame, and comparison with the perturbative Kamiltonian.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::{to_matrix, LieBracketKind, ReprError, Representation};
use crate::engine::KamiltonianResult;
use crate::fourier::FourierElement;
use crate::models::{duffing_build, DuffingParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FloquetError {
    #[error("quasienergies moved by {shift:e} when enlarging the truncation to ({n_fock}, {m_f})")]
    TruncationNotConverged { shift: f64, n_fock: usize, m_f: usize },
    #[error("level {level} has maximum Fock overlap {overlap:.3} < 0.5")]
    AssignmentAmbiguous { level: usize, overlap: f64 },
    #[error(transparent)]
    Repr(#[from] ReprError),
}

/// Numeric Duffing model and the truncation of the extended space.
#[derive(Clone, Debug, PartialEq)]
pub struct FloquetNumericModel {
    pub params: DuffingParams,
    pub n_fock: usize,
    /// Fourier blocks `-m_f ..= m_f` in units of the drive frequency `ω_d`.
    pub m_f: usize,
    /// Convergence tolerance in units of `ω_o`.
    pub tol: f64,
    /// Growth steps for the convergence check.
    pub max_refinements: usize,
}

impl FloquetNumericModel {
    pub fn new(params: DuffingParams) -> Self {
        FloquetNumericModel { params, n_fock: 30, m_f: 15, tol: 1e-10, max_refinements: 2 }
    }
}

/// The three lowest dressed levels at one drive amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSet {
    pub amplitude: f64,
    /// `ε_0, ε_1, ε_2`, unfolded.
    pub energies: [f64; 3],
    pub overlaps: [f64; 3],
    pub n_fock: usize,
    pub m_f: usize,
    /// Largest level change seen in the last truncation step.
    pub convergence_shift: f64,
}

impl LevelSet {
    /// `ω̃_{1,0} = ε_1 − ε_0`.
    pub fn stark(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    /// `K̃_2 = ((ε_2 − ε_1) − (ε_1 − ε_0))/2`.
    pub fn kerr(&self) -> f64 {
        (self.energies[2] - 2.0 * self.energies[1] + self.energies[0]) / 2.0
    }
}

fn bindings(p: &DuffingParams, amplitude: f64) -> crate::scalar::Bindings {
    // A constant phase of Π is removed by a time shift plus a rotation of a,
    // so the spectrum depends on |Π| only.
    p.bindings(Complex64::new(amplitude, 0.0))
}

fn fock_blocks(h: &FourierElement, n_fock: usize, p: &DuffingParams, amplitude: f64) -> Result<BTreeMap<i32, DMatrix<Complex64>>, FloquetError> {
    let b = bindings(p, amplitude);
    let mut out = BTreeMap::new();
    for (m, x) in h.modes() {
        out.insert(m, to_matrix(x, Representation::Fock { dim: n_fock }, &b)?);
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix, through the real solver when
/// the matrix is real.
fn hermitian_eigen(q: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    if q.iter().all(|z| z.im == 0.0) {
        let e = SymmetricEigen::new(q.map(|z| z.re));
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let e = SymmetricEigen::new(q.clone());
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
    }
}

/// Eigenvalue assigned to each Fock state in `0..levels` by maximum overlap.
fn assign(values: &[f64], vectors: &DMatrix<Complex64>, offset: usize, levels: usize) -> Result<Vec<(f64, f64)>, FloquetError> {
    (0..levels)
        .map(|n| {
            let (j, w) = (0..values.len())
                .map(|j| (j, vectors[(offset + n, j)].norm_sqr()))
                .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
            if w < 0.5 {
                return Err(FloquetError::AssignmentAmbiguous { level: n, overlap: w });
            }
            Ok((values[j], w))
        })
        .collect()
}

/// Representative of `e` modulo `period` closest to `reference`.
pub fn unfold(e: f64, period: f64, reference: f64) -> f64 {
    e - period * ((e - reference) / period).round()
}

/// Quasienergy operator restricted to the sector reached from `|0⟩` in block
/// zero. Rotating-frame terms change `(n, m)` by `(∓1, ∓num)` or `(0, ±den)`,
/// so `m − num·n` is a multiple of `den` on the sector and it is spanned by
/// `(n, m = num·n + den·j)` with `|j| ≤ m_f`, block spacing `ω_d`.
fn sector_operator(blocks: &BTreeMap<i32, DMatrix<Complex64>>, p: &DuffingParams, n_fock: usize, m_f: usize) -> DMatrix<Complex64> {
    let omega = p.omega();
    let (num, den) = (p.frame_num, p.frame_den);
    let nb = 2 * m_f + 1;
    let dim = n_fock * nb;
    let mode = |idx: usize| -> (usize, i32) {
        let (jb, n) = (idx / n_fock, idx % n_fock);
        (n, num * n as i32 + den * (jb as i32 - m_f as i32))
    };
    let mut q = DMatrix::<Complex64>::zeros(dim, dim);
    for r in 0..dim {
        let (n, m) = mode(r);
        for c in 0..dim {
            let (n2, m2) = mode(c);
            if let Some(hk) = blocks.get(&(m - m2)) {
                q[(r, c)] = hk[(n, n2)];
            }
        }
        q[(r, r)] += Complex64::new(m as f64 * omega, 0.0);
    }
    q
}

fn quasienergies_at(
    model: &FloquetNumericModel,
    h: &FourierElement,
    amplitude: f64,
    n_fock: usize,
    m_f: usize,
    reference: &[f64; 3],
) -> Result<([f64; 3], [f64; 3]), FloquetError> {
    let p = &model.params;
    let omega = p.omega();
    let blocks = fock_blocks(h, n_fock, p, amplitude)?;
    let (values, vectors) = hermitian_eigen(&sector_operator(&blocks, p, n_fock, m_f));
    let picked = assign(&values, &vectors, m_f * n_fock, 3)?;
    let mut e = [0.0; 3];
    let mut w = [0.0; 3];
    for n in 0..3 {
        // `(n, num·n)` is `|n⟩` in block zero shifted by `num·n·ω`
        let shifted = picked[n].0 - (p.frame_num * n as i32) as f64 * omega;
        e[n] = unfold(shifted, omega, reference[n]);
        w[n] = picked[n].1;
    }
    Ok((e, w))
}

/// Diagonal of the static part, a reference for unfolding.
fn bare_reference(h: &FourierElement, p: &DuffingParams, amplitude: f64) -> Result<[f64; 3], FloquetError> {
    let kind = LieBracketKind::QuantumLadder;
    let h0 = to_matrix(&h.bar(&kind), Representation::Fock { dim: 3 }, &bindings(p, amplitude))?;
    Ok([h0[(0, 0)].re, h0[(1, 1)].re, h0[(2, 2)].re])
}

/// Levels `ε_0, ε_1, ε_2` at one amplitude `|Π|`. The truncation is accepted
/// once doubling `n_fock` and doubling `m_f` each move every level by less
/// than the tolerance; otherwise the dimension that moved them is doubled.
pub fn quasienergies(model: &FloquetNumericModel, amplitude: f64, reference: Option<[f64; 3]>) -> Result<LevelSet, FloquetError> {
    let h = duffing_build(&model.params);
    let reference = match reference {
        Some(r) => r,
        None => bare_reference(&h, &model.params, amplitude)?,
    };
    let tol = model.tol * model.params.omega_o;
    let dist = |a: &[f64; 3], b: &[f64; 3]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let (mut n, mut m) = (model.n_fock, model.m_f);
    let mut shift = f64::INFINITY;
    for _ in 0..=model.max_refinements {
        let (e, w) = quasienergies_at(model, &h, amplitude, n, m, &reference)?;
        let (ef, _) = quasienergies_at(model, &h, amplitude, 2 * n, m, &e)?;
        let (em, _) = quasienergies_at(model, &h, amplitude, n, 2 * m, &e)?;
        let (sf, sm) = (dist(&e, &ef), dist(&e, &em));
        shift = sf.max(sm);
        if shift < tol {
            return Ok(LevelSet { amplitude, energies: e, overlaps: w, n_fock: n, m_f: m, convergence_shift: shift });
        }
        if sf >= tol {
            n *= 2;
        }
        if sm >= tol {
            m *= 2;
        }
    }
    Err(FloquetError::TruncationNotConverged { shift, n_fock: n, m_f: m })
}

/// Levels along an amplitude sweep, unfolded by continuity. Points are
/// diagonalized concurrently; unfolding then follows the sweep order.
pub fn sweep(model: &FloquetNumericModel, amplitudes: &[f64]) -> Result<Vec<LevelSet>, FloquetError> {
    let raw: Vec<Result<LevelSet, FloquetError>> = std::thread::scope(|s| {
        let handles: Vec<_> = amplitudes.iter().map(|a| s.spawn(move || quasienergies(model, *a, None))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let omega = model.params.omega();
    let mut out: Vec<LevelSet> = Vec::with_capacity(raw.len());
    for r in raw {
        let mut l = r?;
        if let Some(prev) = out.last() {
            for n in 0..3 {
                l.energies[n] = unfold(l.energies[n], omega, prev.energies[n]);
            }
        }
        out.push(l);
    }
    Ok(out)
}

/// Largest disagreement between the low levels of two truncated
/// Kamiltonians, typically the same order in two gauges.
pub fn gauge_residual(
    a: &KamiltonianResult<LieBracketKind>,
    b: &KamiltonianResult<LieBracketKind>,
    p: &DuffingParams,
    order: usize,
    amplitude: f64,
    levels: usize,
    n_fock: usize,
) -> Result<f64, FloquetError> {
    let ea = assigned_levels(&kamiltonian_matrix(a, p, order, amplitude, n_fock)?, levels)?;
    let eb = assigned_levels(&kamiltonian_matrix(b, p, order, amplitude, n_fock)?, levels)?;
    Ok(ea.iter().zip(&eb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Stark,
    Kerr,
}

/// Truncated `Σ_{n≤order} K^(n)` on `n_fock` Fock levels at amplitude `|Π|`.
pub fn kamiltonian_matrix(
    r: &KamiltonianResult<LieBracketKind>,
    p: &DuffingParams,
    order: usize,
    amplitude: f64,
    n_fock: usize,
) -> Result<DMatrix<Complex64>, FloquetError> {
    let b = bindings(p, amplitude);
    let mut total = DMatrix::zeros(n_fock, n_fock);
    for k in r.k.iter().take(order + 1) {
        total += to_matrix(k, Representation::Fock { dim: n_fock }, &b)?;
    }
    Ok(total)
}

/// Eigenvalues of a Kamiltonian matrix assigned to Fock states `0..levels`.
pub fn assigned_levels(k: &DMatrix<Complex64>, levels: usize) -> Result<Vec<f64>, FloquetError> {
    let (values, vectors) = hermitian_eigen(k);
    Ok(assign(&values, &vectors, 0, levels)?.into_iter().map(|x| x.0).collect())
}

/// Series value of an observable from the eigenvalues of the truncated
/// Kamiltonian in the `{|0⟩, |1⟩, |2⟩}` sector.
pub fn series_predict(
    r: &KamiltonianResult<LieBracketKind>,
    p: &DuffingParams,
    order: usize,
    amplitude: f64,
    observable: Observable,
) -> Result<f64, FloquetError> {
    let k = kamiltonian_matrix(r, p, order, amplitude, 12)?;
    let e = assigned_levels(&k, 3)?;
    Ok(match observable {
        Observable::Stark => e[1] - e[0],
        Observable::Kerr => (e[2] - 2.0 * e[1] + e[0]) / 2.0,
    })
}

/// Numeric and series values along an amplitude sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub orders: Vec<usize>,
    pub levels: Vec<LevelSet>,
    /// `[point][order index]`.
    pub series_stark: Vec<Vec<f64>>,
    pub series_kerr: Vec<Vec<f64>>,
}

impl SpectralReport {
    pub fn numeric_stark(&self) -> Vec<f64> {
        self.levels.iter().map(LevelSet::stark).collect()
    }

    pub fn numeric_kerr(&self) -> Vec<f64> {
        self.levels.iter().map(LevelSet::kerr).collect()
    }

    /// Ac Stark shift `Δω_{1,0}(|Π|) = ω̃_{1,0}(|Π|) − ω̃_{1,0}(0)` per point, numeric
    /// and per order; the first point must be `|Π| = 0`.
    pub fn stark_shifts(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        shifts(&self.numeric_stark(), &self.series_stark)
    }

    /// Kerr renormalization `ΔK_2(|Π|) = K̃_2(|Π|) − K̃_2(0)`.
    pub fn kerr_shifts(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        shifts(&self.numeric_kerr(), &self.series_kerr)
    }

    /// Relative error of the series shift at each point and order index,
    /// skipping the reference point.
    pub fn relative_shift_errors(&self, observable: Observable) -> Vec<Vec<f64>> {
        let (num, ser) = match observable {
            Observable::Stark => self.stark_shifts(),
            Observable::Kerr => self.kerr_shifts(),
        };
        (1..num.len()).map(|i| ser[i].iter().map(|s| ((s - num[i]) / num[i]).abs()).collect()).collect()
    }

    /// Maximum relative shift error over the sweep, per order index.
    pub fn max_relative_errors(&self, observable: Observable) -> Vec<f64> {
        let errs = self.relative_shift_errors(observable);
        (0..self.orders.len()).map(|j| errs.iter().map(|row| row[j]).fold(0.0, f64::max)).collect()
    }

    /// CSV with a header row. Scaled columns divide by the bare anharmonicity
    /// `α = 2K_2` (for Stark) and the bare `K_2` (for Kerr), both numeric at `|Π| = 0`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("amplitude,numeric_stark,numeric_kerr,numeric_stark_shift,numeric_kerr_shift,numeric_stark_shift_over_alpha,numeric_kerr_shift_over_k2");
        for o in &self.orders {
            write!(s, ",series_stark_{o},series_kerr_{o},diff_stark_{o},diff_kerr_{o},series_stark_shift_over_alpha_{o},series_kerr_shift_over_k2_{o}").expect("string write");
        }
        s.push('\n');
        let (ns, ss) = self.stark_shifts();
        let (nk, sk) = self.kerr_shifts();
        let k2 = self.levels.first().map_or(f64::NAN, LevelSet::kerr);
        let alpha = 2.0 * k2;
        for (i, l) in self.levels.iter().enumerate() {
            write!(s, "{},{},{},{},{},{},{}", l.amplitude, l.stark(), l.kerr(), ns[i], nk[i], ns[i] / alpha, nk[i] / k2).expect("string write");
            for j in 0..self.orders.len() {
                let (a, b) = (self.series_stark[i][j], self.series_kerr[i][j]);
                write!(s, ",{},{},{},{},{},{}", a, b, a - l.stark(), b - l.kerr(), ss[i][j] / alpha, sk[i][j] / k2).expect("string write");
            }
            s.push('\n');
        }
        s
    }
}

fn shifts(num: &[f64], ser: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n0 = num.first().copied().unwrap_or(0.0);
    let s0 = ser.first().cloned().unwrap_or_default();
    (
        num.iter().map(|x| x - n0).collect(),
        ser.iter().map(|row| row.iter().zip(&s0).map(|(x, y)| x - y).collect()).collect(),
    )
}

/// Numeric sweep plus series predictions at every listed order.
pub fn compare(
    model: &FloquetNumericModel,
    r: &KamiltonianResult<LieBracketKind>,
    orders: &[usize],
    amplitudes: &[f64],
) -> Result<SpectralReport, FloquetError> {
    let levels = sweep(model, amplitudes)?;
    let mut series_stark = Vec::new();
    let mut series_kerr = Vec::new();
    for a in amplitudes {
        let mut st = Vec::new();
        let mut kr = Vec::new();
        for o in orders {
            st.push(series_predict(r, &model.params, *o, *a, Observable::Stark)?);
            kr.push(series_predict(r, &model.params, *o, *a, Observable::Kerr)?);
        }
        series_stark.push(st);
        series_kerr.push(kr);
    }
    Ok(SpectralReport { orders: orders.to_vec(), levels, series_stark, series_kerr })
}

/// `n` evenly spaced amplitudes on `[0, max]`.
pub fn amplitude_grid(max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| max * i as f64 / (n - 1).max(1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(g4: f64) -> FloquetNumericModel {
        let mut p = DuffingParams::reference();
        p.g4 = g4;
        let mut m = FloquetNumericModel::new(p);
        m.n_fock = 8;
        m.m_f = 4;
        m
    }

    #[test]
    fn linear_undriven_is_ladder() {
        let m = small(0.0);
        let l = quasienergies(&m, 0.0, None).unwrap();
        let d = m.params.delta();
        assert!((l.stark() - d).abs() < 1e-12);
        assert!(l.kerr().abs() < 1e-12);
    }

    #[test]
    fn weak_nonlinearity_shifts_frequency() {
        let m = small(-0.001);
        let l = quasienergies(&m, 0.0, None).unwrap();
        let bare = m.params.delta() + 12.0 * m.params.g4;
        assert!((l.stark() - bare).abs() < 1e-3);
        assert!((l.kerr() - 6.0 * m.params.g4).abs() < 5e-4);
    }

    #[test]
    fn unfolding() {
        assert!((unfold(0.95, 1.0, 0.0) + 0.05).abs() < 1e-12);
        assert!((unfold(-2.1, 1.0, 0.0) + 0.1).abs() < 1e-12);
    }

    #[test]
    fn grid() {
        let g = amplitude_grid(0.8, 9);
        assert_eq!(g.len(), 9);
        assert!((g[8] - 0.8).abs() < 1e-15 && g[0] == 0.0);
    }
}
