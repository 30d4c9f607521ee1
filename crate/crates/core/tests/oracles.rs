mod common;

use common::random_ladder_hamiltonian;
use kamiltonian::algebra::LieBracketKind;
use kamiltonian::diagram::{enumerate_paths, evaluate_path_sum};
use kamiltonian::engine::{kamiltonian, lie_derivative, GaugeChoice};
use kamiltonian::fourier::FourierElement;
use kamiltonian::freelie::{generate_closed_form, specialize, Target, DEFAULT_MAX_ORDER};
use kamiltonian::models::{kapitza_build, Flavor, KapitzaParams};
use kamiltonian::scalar::Rational;

fn grid_agrees(kind: LieBracketKind, h: &FourierElement, gauge: &GaugeChoice) {
    let r = kamiltonian(&kind, h, 4, gauge).unwrap();
    for n in 0..=4 {
        for k in 0..=n + 1 {
            let path = evaluate_path_sum(&kind, n, k, &r.s, h).unwrap();
            assert_eq!(&path, r.cell(n, k).unwrap(), "K^({n})_[{k}]");
        }
    }
}

#[test]
fn path_sums_match_kapitza() {
    for flavor in [Flavor::Classical, Flavor::Quantum] {
        let kind = flavor.cylinder_tag().bracket_kind();
        grid_agrees(kind, &kapitza_build(&KapitzaParams::symbolic(flavor)), &GaugeChoice::VanVleck);
    }
}

#[test]
fn path_sums_match_random_ladder_models() {
    for seed in 0..20 {
        grid_agrees(LieBracketKind::QuantumLadder, &random_ladder_hamiltonian(seed, 4, 3), &GaugeChoice::VanVleck);
    }
}

#[test]
fn path_sums_hold_in_floquet_magnus_gauge() {
    let gauge = GaugeChoice::FloquetMagnus { t0: Rational::new(1, 4) };
    grid_agrees(LieBracketKind::QuantumLadder, &random_ladder_hamiltonian(99, 3, 2), &gauge);
}

#[test]
fn three_three_splits_into_subpaths() {
    let kind = LieBracketKind::PoissonCylinder;
    let h = kapitza_build(&KapitzaParams::symbolic(Flavor::Classical));
    let r = kamiltonian(&kind, &h, 3, &GaugeChoice::VanVleck).unwrap();
    let third = |x: FourierElement| x.scale(&kind, &kamiltonian::algebra::Factor::rational(Rational::new(1, 3)));
    let a = third(lie_derivative(&kind, &r.s[2], r.cell(1, 2).unwrap()).unwrap());
    let b = third(lie_derivative(&kind, &r.s[1], r.cell(2, 2).unwrap()).unwrap());
    assert_eq!(evaluate_path_sum(&kind, 3, 3, &r.s, &h).unwrap(), a.add(&kind, &b).unwrap());
    assert_eq!(enumerate_paths(3, 3).unwrap().len(), 4);
}

#[test]
fn column_sums_are_static() {
    let kind = LieBracketKind::QuantumCylinder;
    let h = kapitza_build(&KapitzaParams::symbolic(Flavor::Quantum));
    let r = kamiltonian(&kind, &h, 3, &GaugeChoice::VanVleck).unwrap();
    for n in 0..=3 {
        let mut col = FourierElement::zero();
        for k in 0..=n + 1 {
            col = col.add(&kind, &evaluate_path_sum(&kind, n, k, &r.s, &h).unwrap()).unwrap();
        }
        assert!(col.is_time_independent(), "column {n}");
        assert_eq!(col.bar(&kind), r.k[n]);
    }
}

fn closed_forms_specialize(kind: LieBracketKind, h: &FourierElement) {
    let vv = GaugeChoice::VanVleck;
    let k = generate_closed_form(3, Target::K, &vv, DEFAULT_MAX_ORDER).unwrap();
    let s = generate_closed_form(3, Target::S, &vv, DEFAULT_MAX_ORDER).unwrap();
    let r = kamiltonian(&kind, h, 3, &vv).unwrap();
    for n in 0..=3 {
        let sk = specialize(&kind, &k[n], h).unwrap();
        assert!(sk.is_time_independent());
        assert_eq!(sk.bar(&kind), r.k[n], "K^({n})");
    }
    for n in 1..=3 {
        assert_eq!(specialize(&kind, &s[n - 1], h).unwrap(), r.s[n], "S^({n})");
    }
}

#[test]
fn closed_forms_specialize_to_kapitza() {
    for flavor in [Flavor::Classical, Flavor::Quantum] {
        closed_forms_specialize(flavor.cylinder_tag().bracket_kind(), &kapitza_build(&KapitzaParams::symbolic(flavor)));
    }
}

#[test]
fn closed_forms_specialize_to_ladder_models() {
    for seed in 0..5 {
        closed_forms_specialize(LieBracketKind::QuantumLadder, &random_ladder_hamiltonian(seed, 3, 3));
    }
}
