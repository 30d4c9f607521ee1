use super::KamiltonianResult;
use crate::algebra::{AlgebraElement, Basis, LieBracketKind};
use crate::scalar::{GaussRational, Monomial, ScalarCoeff};

/// Which part of an element to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisPattern {
    /// Coefficient of one basis monomial, e.g. `a†a` or `a†²a²`.
    Exact(Basis),
    /// Coefficient `A` of `A·cos(nφ) p^k` in a real cylinder element.
    Cos { winding: i32, momentum: u16 },
    /// Coefficient `B` of `B·sin(nφ) p^k` in a real cylinder element.
    Sin { winding: i32, momentum: u16 },
}

impl BasisPattern {
    /// Extracts the pattern's coefficient from `x`.
    pub fn extract(&self, x: &AlgebraElement) -> ScalarCoeff {
        match *self {
            BasisPattern::Exact(b) => x.coeff(&b),
            // c_n e^{inφ} + c_{-n} e^{-inφ} = (c_n + c_{-n}) cos nφ + i(c_n - c_{-n}) sin nφ
            BasisPattern::Cos { winding, momentum } => {
                let (plus, minus) = pair(x, winding, momentum);
                if winding == 0 {
                    plus
                } else {
                    plus.add(&minus)
                }
            }
            BasisPattern::Sin { winding, momentum } => {
                let (plus, minus) = pair(x, winding, momentum);
                if winding == 0 {
                    ScalarCoeff::zero()
                } else {
                    plus.sub(&minus).scale(&GaussRational::I)
                }
            }
        }
    }
}

fn pair(x: &AlgebraElement, n: i32, k: u16) -> (ScalarCoeff, ScalarCoeff) {
    (x.coeff(&Basis::cylinder(n, k)), x.coeff(&Basis::cylinder(-n, k)))
}

/// Exact coefficients of one basis pattern, per order and summed.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderReport {
    pub pattern: BasisPattern,
    pub per_order: Vec<ScalarCoeff>,
    pub total: ScalarCoeff,
}

impl OrderReport {
    /// Restricts every coefficient to symbol monomials accepted by `pred`.
    pub fn filtered<F: Fn(&Monomial) -> bool>(&self, pred: F) -> OrderReport {
        OrderReport {
            pattern: self.pattern,
            per_order: self.per_order.iter().map(|c| c.filter(&pred)).collect(),
            total: self.total.filter(&pred),
        }
    }
}

/// Collects the coefficient of `pattern` in `K^(0) … K^(max_order)`.
pub fn order_filter(r: &KamiltonianResult<LieBracketKind>, pattern: BasisPattern, max_order: usize) -> OrderReport {
    let per_order: Vec<ScalarCoeff> = r.k.iter().take(max_order + 1).map(|k| pattern.extract(k)).collect();
    let mut total = ScalarCoeff::zero();
    for c in &per_order {
        total.add_assign(c);
    }
    OrderReport { pattern, per_order, total }
}
