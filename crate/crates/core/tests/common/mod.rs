#![allow(dead_code)]

pub mod criteria;

use kamiltonian::algebra::{AlgebraElement, AlgebraTag, Basis, LieBracketKind};
use kamiltonian::fourier::FourierElement;
use kamiltonian::scalar::{GaussRational, Monomial, Rational, ScalarCoeff, Symbol};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn coeff(q: Rational, pairs: &[(&str, i32)]) -> ScalarCoeff {
    ScalarCoeff::term(GaussRational::real(q), Monomial::from_pairs(pairs.iter().map(|(s, e)| (Symbol::intern(s), *e))))
}

pub fn basis_strategy(tag: AlgebraTag) -> BoxedStrategy<Basis> {
    match tag {
        AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical => {
            (0u16..=3, 0u16..=3).prop_map(|(j, k)| Basis::ladder(j, k)).boxed()
        }
        AlgebraTag::CylinderClassical | AlgebraTag::CylinderQuantum => {
            (-3i32..=3, 0u16..=3).prop_map(|(n, k)| Basis::cylinder(n, k)).boxed()
        }
        AlgebraTag::PlanarClassical => (0u16..=3, 0u16..=3).prop_map(|(j, k)| Basis::planar(j, k)).boxed(),
    }
}

fn gauss_strategy() -> impl Strategy<Value = GaussRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| GaussRational::new(Rational::new(a, b), Rational::new(c, d)))
}

/// Coefficients over one free symbol `x`, plus `ħ` in the quantum algebras.
fn coeff_strategy(tag: AlgebraTag) -> impl Strategy<Value = ScalarCoeff> {
    let hbar_max = if tag.is_quantum() { 1 } else { 0 };
    (gauss_strategy(), 0i32..=2, 0i32..=hbar_max).prop_map(|(v, ex, eh)| {
        ScalarCoeff::term(v, Monomial::from_pairs([(Symbol::intern("x"), ex), (Symbol::hbar(), eh)]))
    })
}

pub fn element_strategy(tag: AlgebraTag) -> BoxedStrategy<AlgebraElement> {
    prop::collection::vec((basis_strategy(tag), coeff_strategy(tag)), 0..=4)
        .prop_map(move |terms| AlgebraElement::try_from_terms(tag, terms).unwrap())
        .boxed()
}

pub fn hermitian_strategy(tag: AlgebraTag) -> BoxedStrategy<AlgebraElement> {
    element_strategy(tag).prop_map(|x| x.add(&x.adjoint()).unwrap()).boxed()
}

/// Fourier series over `modes`, each mode an arbitrary element.
pub fn series_strategy(tag: AlgebraTag, modes: std::ops::RangeInclusive<i32>) -> BoxedStrategy<FourierElement> {
    let kind = tag.bracket_kind();
    prop::collection::vec((modes, element_strategy(tag)), 0..=3)
        .prop_map(move |ms| FourierElement::from_modes(&kind, ms).unwrap())
        .boxed()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-5i64..=5);
    }
    Rational::new(n, rng.gen_range(1i64..=4))
}

/// Random Hermitian ladder Hamiltonian with numeric rational coefficients,
/// polynomial degree ≤ `degree` and a few modes drawn from `1..=max_mode`.
pub fn random_ladder_hamiltonian(seed: u64, degree: u16, max_mode: i32) -> FourierElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tag = AlgebraTag::LadderQuantum;
    let kind = LieBracketKind::QuantumLadder;
    let random_element = |rng: &mut ChaCha8Rng, terms: usize| {
        let mut e = AlgebraElement::zero(tag);
        for _ in 0..terms {
            let j = rng.gen_range(0..=degree);
            let k = rng.gen_range(0..=degree - j);
            let v = GaussRational::new(small_rational(rng), if rng.gen_bool(0.5) { small_rational(rng) } else { Rational::ZERO });
            e.add_term(Basis::ladder(j, k), &ScalarCoeff::constant(v));
        }
        e
    };
    let h0 = random_element(&mut rng, 2);
    let mut h = FourierElement::constant(&kind, h0.add(&h0.adjoint()).unwrap());
    let mut modes: Vec<i32> = (1..=max_mode).collect();
    let count = rng.gen_range(1..=modes.len().min(2));
    for _ in 0..count {
        let m = modes.remove(rng.gen_range(0..modes.len()));
        let x = random_element(&mut rng, 2);
        h.add_mode(&kind, m, &x).unwrap();
        h.add_mode(&kind, -m, &x.adjoint()).unwrap();
    }
    h
}

/// Drops the identity component (a constant energy offset).
pub fn without_constant(x: &AlgebraElement) -> AlgebraElement {
    x.filter_basis(|b| !b.is_identity())
}
