//! Path-sum oracle for the recursion grid.
//!
//! Cell `(n, k)` of the grid holds `K^(n)_[k]`. A path leaves `(n, k)` by a
//! Lie-derivative step `L_{S^(j)}/k` to `(n-j, k-1)`, and ends on a seed: `H`
//! at `(0, 0)` or `Ṡ^(n+1)` at `(n, 1)`. Row 1 also links to the `H` seed via
//! the step `L_{S^(n)}` (weight 1). Summing all paths reproduces the cell.

use std::collections::HashMap;
use std::fmt;

use crate::engine::{EngineError, SeriesAlgebra};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Seed {
    /// The Hamiltonian at `(0, 0)`.
    H,
    /// `Ṡ^(j)` entering row 1 at `(j-1, 1)`.
    SDot(usize),
}

/// One Lie-derivative subpath: `L_{S^(generator)}/row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathStep {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub generator: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPath {
    pub target: (usize, usize),
    /// Outermost Lie derivative first.
    pub steps: Vec<PathStep>,
    pub weight: Rational,
    pub seed: Seed,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("node ({n}, {k}) is outside the grid (need k ≤ n+1)")]
    OutOfGrid { n: usize, k: usize },
    #[error("S^({0}) is needed but was not supplied")]
    MissingGenerator(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Tail of a path from some node down to a seed.
#[derive(Clone)]
struct Tail {
    steps: Vec<PathStep>,
    weight: Rational,
    seed: Seed,
}

fn tails(n: usize, k: usize, memo: &mut HashMap<(usize, usize), Vec<Tail>>) -> Vec<Tail> {
    if let Some(t) = memo.get(&(n, k)) {
        return t.clone();
    }
    let mut out = Vec::new();
    match k {
        0 => {
            if n == 0 {
                out.push(Tail { steps: vec![], weight: Rational::ONE, seed: Seed::H });
            }
        }
        1 => {
            out.push(Tail { steps: vec![], weight: Rational::ONE, seed: Seed::SDot(n + 1) });
            if n >= 1 {
                let step = PathStep { from: (n, 1), to: (0, 0), generator: n, row: 1 };
                out.push(Tail { steps: vec![step], weight: Rational::ONE, seed: Seed::H });
            }
        }
        _ => {
            let inv_k = Rational::new(1, k as i64);
            for m in k - 2..n {
                let step = PathStep { from: (n, k), to: (m, k - 1), generator: n - m, row: k };
                for t in tails(m, k - 1, memo) {
                    let mut steps = vec![step];
                    steps.extend(t.steps);
                    out.push(Tail { steps, weight: &t.weight * &inv_k, seed: t.seed });
                }
            }
        }
    }
    memo.insert((n, k), out.clone());
    out
}

/// Every path from `(n, k)` to a seed.
pub fn enumerate_paths(n: usize, k: usize) -> Result<Vec<GridPath>, DiagramError> {
    if k > n + 1 {
        return Err(DiagramError::OutOfGrid { n, k });
    }
    let mut memo = HashMap::new();
    Ok(tails(n, k, &mut memo)
        .into_iter()
        .map(|t| GridPath { target: (n, k), steps: t.steps, weight: t.weight, seed: t.seed })
        .collect())
}

/// `Σ_paths weight · L_{S^(j_1)} … L_{S^(j_r)} seed`, with `s_terms[j] = S^(j)`.
pub fn evaluate_path_sum<A: SeriesAlgebra>(
    alg: &A,
    n: usize,
    k: usize,
    s_terms: &[A::Series],
    h: &A::Series,
) -> Result<A::Series, DiagramError> {
    let get = |j: usize| s_terms.get(j).ok_or(DiagramError::MissingGenerator(j));
    let mut total = alg.series_zero();
    for path in enumerate_paths(n, k)? {
        let mut x = match path.seed {
            Seed::H => h.clone(),
            Seed::SDot(j) => alg.derivative(get(j)?)?,
        };
        for step in path.steps.iter().rev() {
            x = alg.lie(get(step.generator)?, &x)?;
        }
        total = alg.series_add(&total, &alg.series_scale(&x, &path.weight))?;
    }
    Ok(total)
}

impl fmt::Display for GridPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.weight.is_one() {
            write!(f, "{} ", self.weight)?;
        }
        for s in &self.steps {
            write!(f, "L_{{S^({})}} ", s.generator)?;
        }
        match self.seed {
            Seed::H => f.write_str("H"),
            Seed::SDot(j) => write!(f, "Ṡ^({j})"),
        }
    }
}

impl GridPath {
    /// The node sequence visited, starting at the target.
    pub fn nodes(&self) -> Vec<(usize, usize)> {
        let mut v = vec![self.target];
        v.extend(self.steps.iter().map(|s| s.to));
        v
    }
}
