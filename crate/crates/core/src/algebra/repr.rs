use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{AlgebraElement, AlgebraTag, Basis};
use crate::scalar::{Bindings, EvalError};

/// Truncated Hilbert-space representation used for numeric checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Fock states `|0⟩ … |dim-1⟩` for the ladder algebra.
    Fock { dim: usize },
    /// Angular-momentum states `|ℓ⟩`, `ℓ ∈ [-lmax, lmax]`, with `p|ℓ⟩ = ħℓ|ℓ⟩`
    /// and `e^{inφ}|ℓ⟩ = |ℓ+n⟩`.
    Momentum { lmax: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReprError {
    #[error("algebra {0} has no matrix representation of this kind")]
    Unsupported(AlgebraTag),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl Representation {
    pub fn dim(self) -> usize {
        match self {
            Representation::Fock { dim } => dim,
            Representation::Momentum { lmax } => (2 * lmax + 1) as usize,
        }
    }
}

/// Matrix of `x` in `repr`. Each basis monomial is built from exact matrix
/// elements, so truncation only clips states that leave the window.
pub fn to_matrix(x: &AlgebraElement, repr: Representation, bindings: &Bindings) -> Result<DMatrix<Complex64>, ReprError> {
    let dim = repr.dim();
    let mut m = DMatrix::zeros(dim, dim);
    let hbar = bindings.get(&crate::scalar::Symbol::hbar()).copied();
    for (b, c) in x.iter() {
        let c = c.eval(bindings)?;
        match (repr, *b, x.tag()) {
            (Representation::Fock { dim }, Basis::Ladder { dagger, annihilation }, AlgebraTag::LadderQuantum) => {
                let (j, k) = (dagger as usize, annihilation as usize);
                for n in k..dim {
                    let out = n - k + j;
                    if out >= dim {
                        continue;
                    }
                    let amp = (0.5 * (ln_fact(n) - ln_fact(n - k) + ln_fact(out) - ln_fact(n - k))).exp();
                    m[(out, n)] += c * amp;
                }
            }
            (Representation::Momentum { lmax }, Basis::Cylinder { winding, momentum }, AlgebraTag::CylinderQuantum) => {
                let h = hbar.ok_or_else(|| EvalError::Unbound("hbar".into()))?;
                for l in -lmax..=lmax {
                    let out = l + winding as i64;
                    if out.abs() > lmax {
                        continue;
                    }
                    let p = (h * l as f64).powi(momentum as i32);
                    m[((out + lmax) as usize, (l + lmax) as usize)] += c * p;
                }
            }
            _ => return Err(ReprError::Unsupported(x.tag())),
        }
    }
    Ok(m)
}

fn ln_fact(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}
