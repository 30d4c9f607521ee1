//! Concrete operator algebras and their Lie brackets.
//!
//! Everything downstream (Fourier series, the recursion, the diagram oracle)
//! only talks to the [`LieAlgebra`] trait, so classical and quantum runs share
//! one code path and differ only in the bracket implementation here.

mod basis;
mod element;
mod lie;
mod repr;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use basis::Basis;
pub use element::{bracket, AlgebraElement};
pub use lie::{Factor, LieAlgebra, MatrixAlgebra};
pub use repr::{to_matrix, Representation, ReprError};

/// Which algebra an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum AlgebraTag {
    /// Single bosonic mode, normal-ordered `a†^j a^k`, bracket `[·,·]/(iħ)`.
    #[serde(rename = "ladder-quantum")]
    LadderQuantum,
    /// Classical complex amplitude `α*^j α^k` with `{α, α*} = -i/ħ`.
    #[serde(rename = "ladder-classical")]
    LadderClassical,
    /// `e^{inφ} p^k` with `{φ, p} = 1`.
    #[serde(rename = "cylinder-classical")]
    CylinderClassical,
    /// `e^{inφ̂} p̂^k` (exponential left of momentum), bracket `[·,·]/(iħ)`.
    #[serde(rename = "cylinder-quantum")]
    CylinderQuantum,
    /// `q^j p^k` with `{q, p} = 1`.
    #[serde(rename = "planar-classical")]
    PlanarClassical,
}

/// The bracket attached to each algebra. There is exactly one per
/// [`AlgebraTag`]; the two enums exist so call sites can name whichever is
/// more natural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LieBracketKind {
    #[serde(rename = "poisson-planar")]
    PoissonPlanar,
    #[serde(rename = "poisson-cylinder")]
    PoissonCylinder,
    #[serde(rename = "poisson-ladder")]
    PoissonLadder,
    #[serde(rename = "quantum-ladder")]
    QuantumLadder,
    #[serde(rename = "quantum-cylinder")]
    QuantumCylinder,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 5] = [
        AlgebraTag::LadderQuantum,
        AlgebraTag::LadderClassical,
        AlgebraTag::CylinderClassical,
        AlgebraTag::CylinderQuantum,
        AlgebraTag::PlanarClassical,
    ];

    pub fn is_quantum(self) -> bool {
        matches!(self, AlgebraTag::LadderQuantum | AlgebraTag::CylinderQuantum)
    }

    pub fn bracket_kind(self) -> LieBracketKind {
        match self {
            AlgebraTag::LadderQuantum => LieBracketKind::QuantumLadder,
            AlgebraTag::LadderClassical => LieBracketKind::PoissonLadder,
            AlgebraTag::CylinderClassical => LieBracketKind::PoissonCylinder,
            AlgebraTag::CylinderQuantum => LieBracketKind::QuantumCylinder,
            AlgebraTag::PlanarClassical => LieBracketKind::PoissonPlanar,
        }
    }

    /// Classical counterpart of a quantum algebra (identity on classical ones).
    pub fn classical(self) -> AlgebraTag {
        match self {
            AlgebraTag::LadderQuantum => AlgebraTag::LadderClassical,
            AlgebraTag::CylinderQuantum => AlgebraTag::CylinderClassical,
            t => t,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraTag::LadderQuantum => "ladder-quantum",
            AlgebraTag::LadderClassical => "ladder-classical",
            AlgebraTag::CylinderClassical => "cylinder-classical",
            AlgebraTag::CylinderQuantum => "cylinder-quantum",
            AlgebraTag::PlanarClassical => "planar-classical",
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraTag {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| AlgebraError::UnknownAlgebra(s.to_string()))
    }
}

impl LieBracketKind {
    pub fn tag(self) -> AlgebraTag {
        match self {
            LieBracketKind::PoissonPlanar => AlgebraTag::PlanarClassical,
            LieBracketKind::PoissonCylinder => AlgebraTag::CylinderClassical,
            LieBracketKind::PoissonLadder => AlgebraTag::LadderClassical,
            LieBracketKind::QuantumLadder => AlgebraTag::LadderQuantum,
            LieBracketKind::QuantumCylinder => AlgebraTag::CylinderQuantum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: AlgebraTag, right: AlgebraTag },
    #[error("term carries a negative power of hbar; no classical limit exists")]
    NegativeHbarPower,
    #[error("classical limit requested for classical algebra {0}")]
    NotQuantum(AlgebraTag),
    #[error("basis monomial does not belong to algebra {0}")]
    BasisMismatch(AlgebraTag),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}
