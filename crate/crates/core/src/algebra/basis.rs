use serde::{Deserialize, Serialize};

use super::AlgebraTag;
use crate::scalar::{binomial, factorial, GaussRational, Monomial, Rational, ScalarCoeff, Symbol};

/// Basis monomial of one of the concrete algebras.
///
/// Ordering is lexicographic on the index tuple within each variant, which
/// fixes term iteration order (and so serialization and rendering).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Basis {
    /// `a†^dagger a^annihilation` (or `α*^j α^k` classically).
    Ladder { dagger: u16, annihilation: u16 },
    /// `e^{i·winding·φ} p^momentum`.
    Cylinder { winding: i32, momentum: u16 },
    /// `q^position p^momentum`.
    Planar { position: u16, momentum: u16 },
}

impl Basis {
    pub const fn ladder(dagger: u16, annihilation: u16) -> Basis {
        Basis::Ladder { dagger, annihilation }
    }

    pub const fn cylinder(winding: i32, momentum: u16) -> Basis {
        Basis::Cylinder { winding, momentum }
    }

    pub const fn planar(position: u16, momentum: u16) -> Basis {
        Basis::Planar { position, momentum }
    }

    /// The multiplicative identity of the algebra.
    pub fn identity(tag: AlgebraTag) -> Basis {
        match tag {
            AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical => Basis::ladder(0, 0),
            AlgebraTag::CylinderClassical | AlgebraTag::CylinderQuantum => Basis::cylinder(0, 0),
            AlgebraTag::PlanarClassical => Basis::planar(0, 0),
        }
    }

    pub fn fits(self, tag: AlgebraTag) -> bool {
        matches!(
            (self, tag),
            (Basis::Ladder { .. }, AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical)
                | (Basis::Cylinder { .. }, AlgebraTag::CylinderClassical | AlgebraTag::CylinderQuantum)
                | (Basis::Planar { .. }, AlgebraTag::PlanarClassical)
        )
    }

    pub fn is_identity(self) -> bool {
        matches!(
            self,
            Basis::Ladder { dagger: 0, annihilation: 0 }
                | Basis::Cylinder { winding: 0, momentum: 0 }
                | Basis::Planar { position: 0, momentum: 0 }
        )
    }

    /// Flat index tuple used by serialization.
    pub fn indices(self) -> [i64; 2] {
        match self {
            Basis::Ladder { dagger, annihilation } => [dagger as i64, annihilation as i64],
            Basis::Cylinder { winding, momentum } => [winding as i64, momentum as i64],
            Basis::Planar { position, momentum } => [position as i64, momentum as i64],
        }
    }

    pub fn from_indices(tag: AlgebraTag, idx: [i64; 2]) -> Option<Basis> {
        let u = |x: i64| u16::try_from(x).ok();
        Some(match tag {
            AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical => Basis::ladder(u(idx[0])?, u(idx[1])?),
            AlgebraTag::CylinderClassical | AlgebraTag::CylinderQuantum => {
                Basis::cylinder(i32::try_from(idx[0]).ok()?, u(idx[1])?)
            }
            AlgebraTag::PlanarClassical => Basis::planar(u(idx[0])?, u(idx[1])?),
        })
    }
}

/// One term of a basis-level product: the resulting monomial and an exact
/// scalar factor (possibly carrying ħ powers).
pub(crate) type BasisTerm = (Basis, ScalarCoeff);

fn rat_coeff(q: Rational) -> ScalarCoeff {
    ScalarCoeff::rational(q)
}

/// Associative product of two basis monomials in canonical order.
pub(crate) fn basis_product(tag: AlgebraTag, x: Basis, y: Basis) -> Vec<BasisTerm> {
    match (tag, x, y) {
        (
            AlgebraTag::LadderQuantum,
            Basis::Ladder { dagger: j, annihilation: k },
            Basis::Ladder { dagger: l, annihilation: m },
        ) => {
            // a†^j a^k a†^l a^m = Σ_r r! C(k,r) C(l,r) a†^{j+l-r} a^{k+m-r}
            (0..=k.min(l))
                .map(|r| {
                    let c = factorial(r as u32) * binomial(k as u32, r as u32) * binomial(l as u32, r as u32);
                    (Basis::ladder(j + l - r, k + m - r), rat_coeff(c))
                })
                .collect()
        }
        (
            AlgebraTag::CylinderQuantum,
            Basis::Cylinder { winding: n, momentum: k },
            Basis::Cylinder { winding: n2, momentum: k2 },
        ) => {
            // p^k e^{in'φ} = e^{in'φ} (p + n'ħ)^k
            let hbar = Symbol::hbar();
            (0..=k)
                .filter(|&s| s == k || n2 != 0)
                .map(|s| {
                    let c = binomial(k as u32, s as u32) * Rational::from_int(n2 as i64).pow((k - s) as i32);
                    let coeff = ScalarCoeff::term(GaussRational::real(c), Monomial::power(hbar, (k - s) as i32));
                    (Basis::cylinder(n + n2, s + k2), coeff)
                })
                .collect()
        }
        (
            AlgebraTag::LadderClassical,
            Basis::Ladder { dagger: j, annihilation: k },
            Basis::Ladder { dagger: l, annihilation: m },
        ) => vec![(Basis::ladder(j + l, k + m), ScalarCoeff::one())],
        (
            AlgebraTag::CylinderClassical,
            Basis::Cylinder { winding: n, momentum: k },
            Basis::Cylinder { winding: n2, momentum: k2 },
        ) => vec![(Basis::cylinder(n + n2, k + k2), ScalarCoeff::one())],
        (
            AlgebraTag::PlanarClassical,
            Basis::Planar { position: j, momentum: k },
            Basis::Planar { position: l, momentum: m },
        ) => vec![(Basis::planar(j + l, k + m), ScalarCoeff::one())],
        _ => unreachable!("basis/tag mismatch is checked by the caller"),
    }
}

/// Poisson bracket of two basis monomials (classical algebras only).
pub(crate) fn basis_poisson(tag: AlgebraTag, x: Basis, y: Basis) -> Option<BasisTerm> {
    match (tag, x, y) {
        (
            AlgebraTag::CylinderClassical,
            Basis::Cylinder { winding: n, momentum: k },
            Basis::Cylinder { winding: n2, momentum: k2 },
        ) => {
            // {e^{inφ}p^k, e^{in'φ}p^k'} = i(nk' - n'k) e^{i(n+n')φ} p^{k+k'-1}
            let w = n as i64 * k2 as i64 - n2 as i64 * k as i64;
            (w != 0).then(|| {
                (
                    Basis::cylinder(n + n2, k + k2 - 1),
                    ScalarCoeff::constant(GaussRational::imag(Rational::from_int(w))),
                )
            })
        }
        (
            AlgebraTag::PlanarClassical,
            Basis::Planar { position: j, momentum: k },
            Basis::Planar { position: l, momentum: m },
        ) => {
            let w = j as i64 * m as i64 - k as i64 * l as i64;
            (w != 0).then(|| (Basis::planar(j + l - 1, k + m - 1), rat_coeff(Rational::from_int(w))))
        }
        (
            AlgebraTag::LadderClassical,
            Basis::Ladder { dagger: j, annihilation: k },
            Basis::Ladder { dagger: l, annihilation: m },
        ) => {
            // {α*^j α^k, α*^l α^m} = (-i/ħ)(kl - jm) α*^{j+l-1} α^{k+m-1}
            let w = k as i64 * l as i64 - j as i64 * m as i64;
            (w != 0).then(|| {
                (
                    Basis::ladder(j + l - 1, k + m - 1),
                    ScalarCoeff::term(
                        GaussRational::imag(Rational::from_int(-w)),
                        Monomial::power(Symbol::hbar(), -1),
                    ),
                )
            })
        }
        _ => unreachable!("poisson bracket requested for a quantum algebra"),
    }
}

/// Adjoint of one basis monomial, re-expressed in canonical order.
pub(crate) fn basis_adjoint(tag: AlgebraTag, x: Basis) -> Vec<BasisTerm> {
    match (tag, x) {
        (AlgebraTag::LadderQuantum | AlgebraTag::LadderClassical, Basis::Ladder { dagger, annihilation }) => {
            vec![(Basis::ladder(annihilation, dagger), ScalarCoeff::one())]
        }
        (AlgebraTag::CylinderClassical, Basis::Cylinder { winding, momentum }) => {
            vec![(Basis::cylinder(-winding, momentum), ScalarCoeff::one())]
        }
        (AlgebraTag::CylinderQuantum, Basis::Cylinder { winding: n, momentum: k }) => {
            // (e^{inφ} p^k)† = p^k e^{-inφ} = e^{-inφ} (p - nħ)^k
            let hbar = Symbol::hbar();
            (0..=k)
                .filter(|&s| s == k || n != 0)
                .map(|s| {
                    let c = binomial(k as u32, s as u32) * Rational::from_int(-(n as i64)).pow((k - s) as i32);
                    (
                        Basis::cylinder(-n, s),
                        ScalarCoeff::term(GaussRational::real(c), Monomial::power(hbar, (k - s) as i32)),
                    )
                })
                .collect()
        }
        (AlgebraTag::PlanarClassical, b @ Basis::Planar { .. }) => vec![(b, ScalarCoeff::one())],
        _ => unreachable!("basis/tag mismatch is checked by the caller"),
    }
}
