use std::time::{Duration, Instant};

use super::{coeff, element_strategy, random_ladder_hamiltonian, series_strategy, without_constant};
use kamiltonian::algebra::{AlgebraElement, AlgebraTag, Basis, LieBracketKind};
use kamiltonian::diagram::{enumerate_paths, evaluate_path_sum};
use kamiltonian::engine::{kamiltonian, order_filter, BasisPattern, GaugeChoice, KamiltonianResult};
use kamiltonian::fourier::FourierElement;
use kamiltonian::freelie::{corrected_s, generate_closed_form, instantiate, reference_k, Instance, Target, DEFAULT_MAX_ORDER};
use kamiltonian::floquet::{amplitude_grid, compare, gauge_residual, FloquetNumericModel, Observable};
use kamiltonian::models::{cos_phi, duffing_build, kapitza_build, sin_phi_p, DuffingParams, Flavor, KapitzaParams};
use kamiltonian::scalar::{GaussRational, Monomial, Rational, ScalarCoeff, Symbol};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s as f64, || format!("took {elapsed:.1?}, limit {limit_s} s"))
}

fn r2_l2(q: Rational, extra: &[(&str, i32)]) -> ScalarCoeff {
    let mut pairs = vec![("r", 2), ("l", -2)];
    pairs.extend_from_slice(extra);
    coeff(q, &pairs)
}

/// `(r²/l²)(3/8J) p²(1 − cos2φ) + (r²/l²)(Jω_o²/4)(cosφ − cos3φ)`, with `p²`
/// to the left of `cos2φ`.
fn kapitza_k4_classical_part(tag: AlgebraTag) -> AlgebraElement {
    let p2 = AlgebraElement::monomial(tag, Basis::cylinder(0, 2), r2_l2(Rational::new(3, 8), &[("J", -1)]));
    let cos2 = cos_phi(tag, 2, &ScalarCoeff::one());
    let kinetic = p2.sub(&p2.multiply(&cos2).unwrap()).unwrap();
    let v = r2_l2(Rational::new(1, 4), &[("J", 1), ("omega_o", 2)]);
    let potential = cos_phi(tag, 1, &v).sub(&cos_phi(tag, 3, &v)).unwrap();
    kinetic.add(&potential).unwrap()
}

pub fn kapitza_k2(tag: AlgebraTag) -> AlgebraElement {
    cos_phi(tag, 2, &r2_l2(Rational::new(-1, 8), &[("J", 1), ("omega", 2)]))
}

pub fn kapitza_k4_classical() -> AlgebraElement {
    kapitza_k4_classical_part(AlgebraTag::CylinderClassical)
}

/// Normal-ordered quantum `K^(4)` with `p̂` to the left.
pub fn kapitza_k4_quantum() -> AlgebraElement {
    let tag = AlgebraTag::CylinderQuantum;
    let ih = ScalarCoeff::term(GaussRational::I, Monomial::symbol(Symbol::hbar()));
    let p = AlgebraElement::monomial(tag, Basis::cylinder(0, 1), r2_l2(Rational::new(3, 4), &[("J", -1)]).mul(&ih));
    let p_sin = p.multiply(&sin_phi_p(tag, 2, 0, &ScalarCoeff::one())).unwrap();
    let h2 = cos_phi(tag, 2, &r2_l2(Rational::new(-13, 32), &[("J", -1), ("hbar", 2)]));
    kapitza_k4_classical_part(tag).add(&p_sin).unwrap().add(&h2).unwrap()
}

fn kapitza_run(flavor: Flavor) -> (KamiltonianResult<LieBracketKind>, Duration) {
    let kind = flavor.cylinder_tag().bracket_kind();
    let t = Instant::now();
    let r = kamiltonian(&kind, &kapitza_build(&KapitzaParams::symbolic(flavor)), 4, &GaugeChoice::VanVleck).unwrap();
    (r, t.elapsed())
}

pub fn criterion_1() -> Outcome {
    let (r, dt) = kapitza_run(Flavor::Classical);
    within(dt, 10)?;
    let tag = AlgebraTag::CylinderClassical;
    check(r.k[1].is_zero() && r.k[3].is_zero(), || "K^(1) or K^(3) nonzero".into())?;
    check(without_constant(&r.k[2]) == kapitza_k2(tag), || format!("K^(2) = {:?}", r.k[2]))?;
    check(without_constant(&r.k[4]) == kapitza_k4_classical(), || format!("K^(4) = {:?}", r.k[4]))?;
    Ok(format!("K^(1)=K^(3)=0, K^(2) and K^(4) exact, {dt:.2?}"))
}

pub fn criterion_2() -> Outcome {
    let (r, dt) = kapitza_run(Flavor::Quantum);
    within(dt, 30)?;
    let tag = AlgebraTag::CylinderQuantum;
    let k0 = AlgebraElement::monomial(tag, Basis::cylinder(0, 2), coeff(Rational::new(1, 2), &[("J", -1)]))
        .add(&cos_phi(tag, 1, &coeff(Rational::from_int(-1), &[("J", 1), ("omega_o", 2)])))
        .unwrap();
    check(r.k[0] == k0, || format!("K^(0) = {:?}", r.k[0]))?;
    check(r.k[1].is_zero() && r.k[3].is_zero(), || "K^(1) or K^(3) nonzero".into())?;
    check(without_constant(&r.k[2]) == kapitza_k2(tag), || format!("K^(2) = {:?}", r.k[2]))?;
    check(without_constant(&r.k[4]) == kapitza_k4_quantum(), || format!("K^(4) = {:?}", r.k[4]))?;
    let (c, _) = kapitza_run(Flavor::Classical);
    for n in 0..=4 {
        check(r.k[n].classical_limit().unwrap() == c.k[n], || format!("classical limit differs at order {n}"))?;
    }
    Ok(format!("normal-ordered K^(4) exact incl. iħ p sin2φ and ħ² cos2φ, classical limits agree, {dt:.2?}"))
}

/// One published Duffing coefficient: `hbar · g4^g · δ^d · ω^-w · |Π|^(2·pi) · value`.
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub g4: i32,
    pub delta: i32,
    pub omega: i32,
    pub pi: i32,
    pub value: i64,
}

const fn e(g4: i32, delta: i32, omega: i32, pi: i32, value: i64) -> TableEntry {
    TableEntry { g4, delta, omega, pi, value }
}

/// `a†a`: the renormalized qubit frequency and its quantum corrections.
/// The `g4²δ/ω²` term printed with `|Π|⁶` is checked at `|Π|⁴`.
pub const STARK_TABLE: [TableEntry; 11] = [
    e(1, 0, 0, 1, 24),
    e(2, 0, 1, 2, 531),
    e(2, 0, 1, 1, 625),
    e(2, 0, 1, 0, -58),
    e(3, 0, 2, 3, 21832),
    e(3, 0, 2, 2, 43258),
    e(3, 0, 2, 1, 13815),
    e(3, 0, 2, 0, 573),
    e(2, 1, 2, 2, 665),
    e(2, 1, 2, 1, 907),
    e(2, 1, 2, 0, 12),
];

/// `a†²a²` through `1/ω²`.
pub const KERR_TABLE: [TableEntry; 8] = [
    e(1, 0, 0, 0, 6),
    e(2, 0, 1, 1, 312),
    e(2, 0, 1, 0, -61),
    e(3, 0, 2, 2, 21629),
    e(3, 0, 2, 1, 17919),
    e(3, 0, 2, 0, 1007),
    e(2, 1, 2, 1, 453),
    e(2, 1, 2, 0, 12),
];

/// `a†²a²` at `1/ω³`.
pub const KERR_TABLE_EXTENDED: [TableEntry; 9] = [
    e(4, 0, 3, 3, 1517277),
    e(4, 0, 3, 2, 2723568),
    e(4, 0, 3, 1, 655974),
    e(4, 0, 3, 0, 20629),
    e(3, 1, 3, 2, 53383),
    e(3, 1, 3, 1, 46418),
    e(3, 1, 3, 0, 403),
    e(2, 2, 3, 1, 427),
    e(2, 2, 3, 0, 2),
];

impl TableEntry {
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs([
            (Symbol::hbar(), 1),
            (Symbol::intern("g4"), self.g4),
            (Symbol::intern("delta"), self.delta),
            (Symbol::omega(), -self.omega),
            (Symbol::intern("Pi"), self.pi),
            (Symbol::intern("Pistar"), self.pi),
        ])
    }
}

pub fn duffing_order3() -> (KamiltonianResult<LieBracketKind>, Duration) {
    let t = Instant::now();
    let r = kamiltonian(&LieBracketKind::QuantumLadder, &duffing_build(&DuffingParams::reference()), 3, &GaugeChoice::VanVleck).unwrap();
    (r, t.elapsed())
}

/// Compares the exact coefficients against a published table; the table
/// prints the nearest integer.
pub fn table_mismatches(r: &KamiltonianResult<LieBracketKind>, basis: Basis, table: &[TableEntry]) -> Vec<String> {
    let total = order_filter(r, BasisPattern::Exact(basis), 3).total;
    table
        .iter()
        .filter_map(|t| {
            let c = total.get(&t.monomial());
            let exact = c.re.clone();
            let ok = c.im.is_zero() && (exact.to_f64().round() as i64) == t.value;
            (!ok).then(|| format!("{:?}: published {}, exact {}", t, t.value, exact))
        })
        .collect()
}

pub fn criterion_3() -> Outcome {
    let (r, dt) = duffing_order3();
    within(dt, 600)?;
    let mut bad = table_mismatches(&r, Basis::ladder(1, 1), &STARK_TABLE);
    bad.extend(table_mismatches(&r, Basis::ladder(2, 2), &KERR_TABLE));
    check(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} a†a and {} a†²a² coefficients match, {dt:.2?}", STARK_TABLE.len(), KERR_TABLE.len()))
}

fn max_abs(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn criterion_4() -> Outcome {
    let vv = GaugeChoice::VanVleck;
    let k = generate_closed_form(5, Target::K, &vv, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let s = generate_closed_form(5, Target::S, &vv, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let inst = Instance::random(4, 2, 2.1, seed);
        for n in 0..=3 {
            let d = max_abs(&(instantiate(&k[n], &inst, 0.0).unwrap() - instantiate(&reference_k(n).unwrap(), &inst, 0.0).unwrap()));
            worst = worst.max(d);
        }
        for n in 1..=3 {
            for phase in [0.0, 0.7, 2.3] {
                let a = instantiate(&s[n - 1], &inst, phase).unwrap();
                let b = instantiate(&corrected_s(n).unwrap(), &inst, phase).unwrap();
                worst = worst.max(max_abs(&(a - b)));
            }
        }
    }
    check(worst < 1e-9, || format!("fixture difference {worst:e}"))?;
    check(k.iter().all(|x| x.is_time_independent()), || "closed-form K carries a nonzero mode".into())?;
    let mut herm: f64 = 0.0;
    for seed in 0..10 {
        let inst = Instance::random(4, 2, 2.1, seed);
        for x in &k[4..=5] {
            let a = instantiate(x, &inst, 0.0).unwrap();
            herm = herm.max(max_abs(&(&a - a.adjoint())));
        }
    }
    check(herm < 1e-10, || format!("K^(4..5) anti-Hermitian part {herm:e}"))?;
    Ok(format!("orders 0-3 within {worst:.1e} of fixtures; K^(4), K^(5) ({} and {} terms) static and Hermitian to {herm:.1e}", k[4].len(), k[5].len()))
}

fn grid_mismatch(kind: LieBracketKind, h: &FourierElement) -> Option<(usize, usize)> {
    let r = kamiltonian(&kind, h, 4, &GaugeChoice::VanVleck).unwrap();
    for n in 0..=4 {
        for k in 0..=n + 1 {
            if evaluate_path_sum(&kind, n, k, &r.s, h).ok().as_ref() != r.cell(n, k) {
                return Some((n, k));
            }
        }
    }
    None
}

pub fn criterion_5() -> Outcome {
    for flavor in [Flavor::Classical, Flavor::Quantum] {
        let kind = flavor.cylinder_tag().bracket_kind();
        if let Some(c) = grid_mismatch(kind, &kapitza_build(&KapitzaParams::symbolic(flavor))) {
            return Err(format!("Kapitza {flavor:?} differs at {c:?}"));
        }
    }
    for seed in 0..20 {
        if let Some(c) = grid_mismatch(LieBracketKind::QuantumLadder, &random_ladder_hamiltonian(seed, 4, 3)) {
            return Err(format!("random model {seed} differs at {c:?}"));
        }
    }
    let paths = enumerate_paths(3, 3).unwrap().len();
    check(paths == 4, || format!("{paths} paths into (3,3)"))?;
    Ok("all cells 0 ≤ k ≤ n+1 ≤ 5 equal on Kapitza and 20 random models; 4 paths into (3,3)".into())
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ")
}

pub fn criterion_6() -> Outcome {
    let t = Instant::now();
    let p = DuffingParams::reference();
    let r = kamiltonian(&LieBracketKind::QuantumLadder, &duffing_build(&p), 5, &GaugeChoice::VanVleck).unwrap();
    let orders: Vec<usize> = (0..=5).collect();
    let report = compare(&FloquetNumericModel::new(p), &r, &orders, &amplitude_grid(0.8, 9)).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    within(dt, 900)?;
    let stark = report.max_relative_errors(Observable::Stark);
    let kerr = report.max_relative_errors(Observable::Kerr);
    let last = report.relative_shift_errors(Observable::Stark).last().unwrap()[3];
    check(strictly_decreasing(&stark[..=3]), || format!("Stark errors N=0..3: {}", fmt_list(&stark[..=3])))?;
    check(last < 0.05, || format!("order-3 Stark error at |Π|=0.8 is {last:.4}"))?;
    check(strictly_decreasing(&kerr[1..=3]), || format!("Kerr errors N=1..3: {}", fmt_list(&kerr[1..=3])))?;
    let tail = if strictly_decreasing(&kerr[1..=5]) { "keeps decreasing" } else { "not monotone" };
    Ok(format!(
        "Stark N=0..3 [{}], order 3 at |Π|=0.8: {last:.4}; Kerr N=1..3 [{}], N=4,5 {tail} [{}]; {dt:.0?}",
        fmt_list(&stark[..=3]),
        fmt_list(&kerr[1..=3]),
        fmt_list(&kerr[4..=5])
    ))
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn bracket_laws(tag: AlgebraTag) -> Result<(), String> {
    let el = || element_strategy(tag);
    run_property(100, (el(), el(), el()), |(a, b, c)| {
        prop_assert!(a.bracket(&b).unwrap().add(&b.bracket(&a).unwrap()).unwrap().is_zero());
        let j = a.bracket(&b.bracket(&c).unwrap()).unwrap()
            .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap()).unwrap()
            .add(&c.bracket(&a.bracket(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
        if !tag.is_quantum() {
            let lhs = a.bracket(&b.multiply(&c).unwrap()).unwrap();
            let rhs = a.bracket(&b).unwrap().multiply(&c).unwrap().add(&b.multiply(&a.bracket(&c).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        Ok(())
    })
    .map_err(|e| format!("{tag}: {e}"))
}

pub fn criterion_7() -> Outcome {
    for tag in AlgebraTag::ALL {
        bracket_laws(tag)?;
    }
    let lq = LieBracketKind::QuantumLadder;
    run_property(20, any::<u64>(), |seed| {
        let h = random_ladder_hamiltonian(seed, 4, 3);
        let r = kamiltonian(&lq, &h, 4, &GaugeChoice::VanVleck).unwrap();
        for n in 0..=4 {
            let col = (0..=n + 1).fold(FourierElement::zero(), |acc, k| acc.add(&lq, r.cell(n, k).unwrap()).unwrap());
            prop_assert!(col.is_time_independent());
            prop_assert!(r.k[n].is_hermitian());
        }
        for s in r.s_terms() {
            prop_assert!(s.bar(&lq).is_zero());
        }
        let json = kamiltonian::serial::Expansion::from_result(&r, AlgebraTag::LadderQuantum).to_string_pretty();
        let back = kamiltonian::serial::Expansion::parse(&json).unwrap().to_string_pretty();
        prop_assert_eq!(back, json);
        Ok(())
    })?;
    run_property(20, (any::<u64>(), 0i64..4), |(seed, q)| {
        let t0 = Rational::new(q, 4);
        let r = kamiltonian(&lq, &random_ladder_hamiltonian(seed, 3, 2), 3, &GaugeChoice::FloquetMagnus { t0: t0.clone() }).unwrap();
        for s in r.s_terms() {
            prop_assert!(s.eval_at_phase(&lq, &t0).unwrap().is_zero());
        }
        Ok(())
    })?;
    run_property(100, series_strategy(AlgebraTag::LadderQuantum, -3..=3), |f| {
        let osc = f.osc();
        let zero = AlgebraElement::zero(AlgebraTag::LadderQuantum);
        prop_assert_eq!(osc.integrate_osc(&lq, &zero).unwrap().ddt(&lq), osc);
        Ok(())
    })?;
    Ok("antisymmetry, Jacobi, Leibniz (100 cases x 5 algebras); static K, S̄=0, Hermitian K, S(t0)=0, ddt∘∫=id, JSON byte-exact".into())
}

pub fn criterion_8() -> Outcome {
    let p = DuffingParams::reference();
    let lq = LieBracketKind::QuantumLadder;
    let h = duffing_build(&p);
    let vv = kamiltonian(&lq, &h, 2, &GaugeChoice::VanVleck).unwrap();
    let fm = kamiltonian(&lq, &h, 2, &GaugeChoice::FloquetMagnus { t0: Rational::ZERO }).unwrap();
    let res = |n| gauge_residual(&vv, &fm, &p, n, 0.3, 4, 20).map_err(|e| e.to_string());
    let (r1, r2) = (res(1)?, res(2)?);
    let ratio = r1 / r2;
    check(ratio >= 3.0, || format!("residual N=1 {r1:.3e}, N=2 {r2:.3e}, ratio {ratio:.2}"))?;
    Ok(format!("residual N=1 {r1:.3e}, N=2 {r2:.3e}, ratio {ratio:.2}"))
}
