mod common;

use common::{random_ladder_hamiltonian, series_strategy};
use kamiltonian::algebra::{AlgebraTag, LieBracketKind};
use kamiltonian::engine::{kamiltonian, GaugeChoice, KamiltonianResult};
use kamiltonian::fourier::FourierElement;
use kamiltonian::models::{kapitza_build, Flavor, KapitzaParams};
use kamiltonian::scalar::Rational;
use proptest::prelude::*;

const LQ: LieBracketKind = LieBracketKind::QuantumLadder;

fn column_sum(r: &KamiltonianResult<LieBracketKind>, n: usize) -> FourierElement {
    (0..=n + 1).fold(FourierElement::zero(), |acc, k| acc.add(&LQ, r.cell(n, k).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn columns_are_time_independent(seed in any::<u64>()) {
        let h = random_ladder_hamiltonian(seed, 4, 3);
        let r = kamiltonian(&LQ, &h, 4, &GaugeChoice::VanVleck).unwrap();
        for n in 0..=4 {
            let col = column_sum(&r, n);
            prop_assert!(col.is_time_independent(), "order {}", n);
            prop_assert_eq!(col.bar(&LQ), r.k[n].clone());
        }
    }

    #[test]
    fn van_vleck_gauge(seed in any::<u64>()) {
        let h = random_ladder_hamiltonian(seed, 3, 2);
        let r = kamiltonian(&LQ, &h, 3, &GaugeChoice::VanVleck).unwrap();
        for k in &r.k {
            prop_assert!(k.is_hermitian());
        }
        for s in r.s_terms() {
            prop_assert!(s.bar(&LQ).is_zero());
            prop_assert!(s.is_hermitian(&LQ));
        }
    }

    #[test]
    fn floquet_magnus_gauge(seed in any::<u64>(), quarter in 0i64..4) {
        let h = random_ladder_hamiltonian(seed, 3, 2);
        let t0 = Rational::new(quarter, 4);
        let r = kamiltonian(&LQ, &h, 3, &GaugeChoice::FloquetMagnus { t0: t0.clone() }).unwrap();
        for s in r.s_terms() {
            prop_assert!(s.eval_at_phase(&LQ, &t0).unwrap().is_zero());
        }
        for n in 0..=3 {
            prop_assert!(column_sum(&r, n).is_time_independent());
        }
    }

    #[test]
    fn derivative_inverts_integration(f in series_strategy(AlgebraTag::LadderQuantum, -3..=3)) {
        let kind = AlgebraTag::LadderQuantum.bracket_kind();
        let osc = f.osc();
        let zero = kamiltonian::algebra::AlgebraElement::zero(AlgebraTag::LadderQuantum);
        prop_assert_eq!(osc.integrate_osc(&kind, &zero).unwrap().ddt(&kind), osc.clone());
        prop_assert_eq!(f.ddt(&kind).integrate_osc(&kind, &zero).unwrap(), osc.clone());
        let lifted = FourierElement::constant(&kind, f.bar(&kind));
        prop_assert_eq!(osc.add(&kind, &lifted).unwrap(), f.clone());
        prop_assert!(f.integrate_osc(&kind, &zero).is_err() || f.mode(0).is_none());
    }

    #[test]
    fn hermiticity_survives_fourier_operations(seed in any::<u64>()) {
        let h = random_ladder_hamiltonian(seed, 3, 3);
        let zero = kamiltonian::algebra::AlgebraElement::zero(AlgebraTag::LadderQuantum);
        prop_assert!(h.is_hermitian(&LQ));
        prop_assert!(h.osc().is_hermitian(&LQ));
        prop_assert!(h.bar(&LQ).is_hermitian());
        prop_assert!(h.bracket(&LQ, &h.osc()).unwrap().is_hermitian(&LQ));
        prop_assert!(h.osc().integrate_osc(&LQ, &zero).unwrap().is_hermitian(&LQ));
    }
}

#[test]
fn kapitza_quantum_reduces_to_classical() {
    let quantum = LieBracketKind::QuantumCylinder;
    let classical = LieBracketKind::PoissonCylinder;
    let hq = kapitza_build(&KapitzaParams::symbolic(Flavor::Quantum));
    let hc = kapitza_build(&KapitzaParams::symbolic(Flavor::Classical));
    let limit = hq.map(&classical, |_, x| x.classical_limit().unwrap());
    assert_eq!(limit, hc);
    let rq = kamiltonian(&quantum, &hq, 4, &GaugeChoice::VanVleck).unwrap();
    let rc = kamiltonian(&classical, &hc, 4, &GaugeChoice::VanVleck).unwrap();
    for n in 0..=4 {
        assert_eq!(rq.k[n].classical_limit().unwrap(), rc.k[n], "K^({n})");
        if n < 4 {
            assert_eq!(rq.k[n], rc.k[n].quantize(), "K^({n}) carries no ħ");
        }
    }
}

#[test]
fn secular_input_is_rejected() {
    let h = random_ladder_hamiltonian(1, 2, 1);
    let zero = kamiltonian::algebra::AlgebraElement::zero(AlgebraTag::LadderQuantum);
    assert!(h.integrate_osc(&LQ, &zero).is_err());
}
