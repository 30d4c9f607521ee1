//! The two worked examples: the Kapitza pendulum (classical and quantum) and
//! the driven Duffing oscillator in its displaced rotating frame.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraError, AlgebraTag, Basis, LieBracketKind};
use crate::fourier::FourierElement;
use crate::scalar::{Bindings, GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Classical,
    Quantum,
}

impl Flavor {
    pub fn cylinder_tag(self) -> AlgebraTag {
        match self {
            Flavor::Classical => AlgebraTag::CylinderClassical,
            Flavor::Quantum => AlgebraTag::CylinderQuantum,
        }
    }
}

fn sym(name: &str) -> Symbol {
    Symbol::intern(name)
}

fn coeff(q: Rational, pairs: &[(&str, i32)]) -> ScalarCoeff {
    ScalarCoeff::term(GaussRational::real(q), Monomial::from_pairs(pairs.iter().map(|(s, e)| (sym(s), *e))))
}

/// `c·(e^{inφ} + e^{-inφ})/2 = c·cos(nφ)` in the given cylinder algebra.
pub fn cos_phi(tag: AlgebraTag, n: i32, c: &ScalarCoeff) -> AlgebraElement {
    let half = c.scale_rational(&Rational::new(1, 2));
    let mut e = AlgebraElement::monomial(tag, Basis::cylinder(n, 0), half.clone());
    e.add_term(Basis::cylinder(-n, 0), &half);
    e
}

/// `c·sin(nφ) = c·(e^{inφ} - e^{-inφ})/(2i)`, optionally times `p^k` on the right.
pub fn sin_phi_p(tag: AlgebraTag, n: i32, k: u16, c: &ScalarCoeff) -> AlgebraElement {
    let f = c.scale(&GaussRational::imag(Rational::new(-1, 2)));
    let mut e = AlgebraElement::monomial(tag, Basis::cylinder(n, k), f.clone());
    e.add_term(Basis::cylinder(-n, k), &f.neg());
    e
}

/// Symbolic Kapitza model; the numeric fields only feed the validity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct KapitzaParams {
    pub flavor: Flavor,
    pub j: f64,
    pub omega_o: f64,
    pub r: f64,
    pub l: f64,
}

impl KapitzaParams {
    pub fn symbolic(flavor: Flavor) -> Self {
        KapitzaParams { flavor, j: 1.0, omega_o: 1.0, r: 0.1, l: 1.0 }
    }

    /// Whether `ω_o ≪ ω` and `r ≪ 2l` hold at drive frequency `omega`, in the
    /// weak sense `ω_o < ω` and `r < 2l`.
    pub fn is_perturbative(&self, omega: f64) -> bool {
        self.omega_o < omega && self.r < 2.0 * self.l
    }

    /// Whether the inverted position `φ = π` is stable at drive frequency
    /// `omega`, i.e. `V''(π) > 0` for `V = -Jω_o² cos φ - J(r²ω²/8l²) cos 2φ`.
    pub fn inverted_is_stable(&self, omega: f64) -> bool {
        let ratio = self.r * omega / (self.l * self.omega_o);
        ratio * ratio > 2.0
    }

    pub fn bindings(&self, omega: f64, hbar: f64) -> Bindings {
        let mut b = Bindings::new();
        for (n, v) in [("J", self.j), ("omega_o", self.omega_o), ("r", self.r), ("l", self.l), ("omega", omega), ("hbar", hbar)]
        {
            b.insert(sym(n), Complex64::new(v, 0.0));
        }
        b
    }
}

/// `H = p²/2J − Jω_o² cos φ − J(r/l)ω² cos φ cos ωt` on modes {−1, 0, 1}.
pub fn kapitza_build(p: &KapitzaParams) -> FourierElement {
    let tag = p.flavor.cylinder_tag();
    let kind = tag.bracket_kind();
    let mut h0 = AlgebraElement::monomial(tag, Basis::cylinder(0, 2), coeff(Rational::new(1, 2), &[("J", -1)]));
    h0.add_assign(&cos_phi(tag, 1, &coeff(Rational::from_int(-1), &[("J", 1), ("omega_o", 2)])));
    let h1 = cos_phi(tag, 1, &coeff(Rational::new(-1, 2), &[("J", 1), ("r", 1), ("l", -1), ("omega", 2)]));
    FourierElement::from_modes(&kind, [(0, h0), (1, h1.clone()), (-1, h1)]).expect("single algebra")
}

/// Driven Duffing oscillator in the frame of the displaced rotating
/// transformation at `frame_num/frame_den · ω_d`, with base frequency
/// `ω = ω_d/frame_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct DuffingParams {
    pub omega_o: f64,
    pub g4: f64,
    pub omega_d: f64,
    /// Drive amplitude `Ω`.
    pub drive: f64,
    pub frame_num: i32,
    pub frame_den: i32,
}

impl DuffingParams {
    /// Parameters of the driven-oscillator example: `ω_o = 1`,
    /// `g4 = −0.001 ω_o`, `ω_d = 1.21 ω_o`, frame fraction 5/6.
    pub fn reference() -> Self {
        DuffingParams { omega_o: 1.0, g4: -0.001, omega_d: 1.21, drive: 0.0, frame_num: 5, frame_den: 6 }
    }

    pub fn omega(&self) -> f64 {
        self.omega_d / self.frame_den as f64
    }

    pub fn delta(&self) -> f64 {
        self.omega_o - self.frame_num as f64 * self.omega()
    }

    /// `Π = 2iΩω_d/(ω_d² − ω_o²)`.
    pub fn pi(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * self.drive * self.omega_d / (self.omega_d.powi(2) - self.omega_o.powi(2)))
    }

    /// Numeric values for `δ, g4, ω, ħ = 1` and `Π = pi`, `Π* = conj(pi)`.
    pub fn bindings(&self, pi: Complex64) -> Bindings {
        let mut b = Bindings::new();
        for (n, v) in [("delta", self.delta()), ("g4", self.g4), ("omega", self.omega()), ("hbar", 1.0)] {
            b.insert(sym(n), Complex64::new(v, 0.0));
        }
        b.insert(sym("Pi"), pi);
        b.insert(sym("Pistar"), pi.conj());
        b
    }
}

/// Product of two Fourier series with the algebra's associative product.
pub fn fourier_multiply(a: &FourierElement, b: &FourierElement, tag: AlgebraTag) -> Result<FourierElement, AlgebraError> {
    let kind = tag.bracket_kind();
    let mut r = FourierElement::zero();
    for (m1, x) in a.modes() {
        for (m2, y) in b.modes() {
            r.add_mode(&kind, m1 + m2, &x.multiply(y)?)?;
        }
    }
    Ok(r)
}

/// `H = ħ[δ a†a + g4 (a e^{−i·num·ωt} + a† e^{i·num·ωt} + Π e^{−i·den·ωt} + Π* e^{i·den·ωt})⁴]`,
/// expanded and normal-ordered.
pub fn duffing_build(p: &DuffingParams) -> FourierElement {
    duffing_build_frame(p.frame_num, p.frame_den)
}

pub fn duffing_build_frame(num: i32, den: i32) -> FourierElement {
    let tag = AlgebraTag::LadderQuantum;
    let kind = LieBracketKind::QuantumLadder;
    let (pi, pistar) = (sym("Pi"), sym("Pistar"));
    let one = ScalarCoeff::one();
    let id = |c: ScalarCoeff| AlgebraElement::scalar(tag, c);
    let x = FourierElement::from_modes(
        &kind,
        [
            (-num, AlgebraElement::monomial(tag, Basis::ladder(0, 1), one.clone())),
            (num, AlgebraElement::monomial(tag, Basis::ladder(1, 0), one.clone())),
            (-den, id(ScalarCoeff::symbol(pi))),
            (den, id(ScalarCoeff::symbol(pistar))),
        ],
    )
    .expect("single algebra");
    let x2 = fourier_multiply(&x, &x, tag).expect("single algebra");
    let x4 = fourier_multiply(&x2, &x2, tag).expect("single algebra");
    let hbar = Monomial::symbol(Symbol::hbar());
    let g4 = ScalarCoeff::term(GaussRational::ONE, Monomial::symbol(sym("g4")).mul(&hbar));
    let mut h = x4.map(&kind, |_, e| e.scale(&g4));
    let detuning = AlgebraElement::monomial(tag, Basis::ladder(1, 1), ScalarCoeff::term(GaussRational::ONE, Monomial::symbol(sym("delta")).mul(&hbar)));
    h.add_mode(&kind, 0, &detuning).expect("single algebra");
    h
}

/// `Π·Π*`, the symbol monomial of `|Π|²`.
pub fn abs_pi_sq() -> Monomial {
    Monomial::from_pairs([(sym("Pi"), 1), (sym("Pistar"), 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4() -> Monomial {
        Monomial::symbol(sym("g4"))
    }

    fn hbar() -> Monomial {
        Monomial::symbol(Symbol::hbar())
    }

    #[test]
    fn kapitza_modes() {
        for flavor in [Flavor::Classical, Flavor::Quantum] {
            let h = kapitza_build(&KapitzaParams::symbolic(flavor));
            assert_eq!(h.support(), vec![-1, 0, 1]);
            let kind = flavor.cylinder_tag().bracket_kind();
            assert!(h.is_hermitian(&kind));
            let h1 = h.mode(1).unwrap();
            let c = coeff(Rational::new(-1, 4), &[("J", 1), ("r", 1), ("l", -1), ("omega", 2)]);
            assert_eq!(h1.coeff(&Basis::cylinder(1, 0)), c);
            assert_eq!(h1.coeff(&Basis::cylinder(-1, 0)), c);
            let h0 = h.bar(&kind);
            assert_eq!(h0.coeff(&Basis::cylinder(1, 0)), coeff(Rational::new(-1, 2), &[("J", 1), ("omega_o", 2)]));
            assert_eq!(h0.coeff(&Basis::cylinder(0, 2)), coeff(Rational::new(1, 2), &[("J", -1)]));
        }
    }

    #[test]
    fn duffing_zero_mode() {
        let h = duffing_build(&DuffingParams::reference());
        let kind = LieBracketKind::QuantumLadder;
        assert!(h.is_hermitian(&kind));
        assert!(h.support().iter().all(|m| m.abs() <= 24));
        let h0 = h.bar(&kind);
        let g4h = g4().mul(&hbar());
        let n = h0.coeff(&Basis::ladder(1, 1));
        assert_eq!(n.get(&g4h), GaussRational::from_int(12));
        assert_eq!(n.get(&g4h.mul(&abs_pi_sq())), GaussRational::from_int(24));
        assert_eq!(n.get(&Monomial::symbol(sym("delta")).mul(&hbar())), GaussRational::ONE);
        assert_eq!(h0.coeff(&Basis::ladder(2, 2)).get(&g4h), GaussRational::from_int(6));
        assert_eq!(h0.coeff(&Basis::ladder(0, 0)).get(&g4h), GaussRational::from_int(3));
    }

    #[test]
    fn inversion_threshold() {
        let mut p = KapitzaParams::symbolic(Flavor::Classical);
        p.r = 0.1;
        p.l = 1.0;
        p.omega_o = 1.0;
        assert!(!p.inverted_is_stable(14.0));
        assert!(p.inverted_is_stable(14.2));
    }
}
