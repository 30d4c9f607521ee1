use std::cmp::Ordering;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use smallvec::SmallVec;

/// Interned parameter symbol (ω, ħ, model constants).
///
/// Symbols are process-global. The well-known ones are registered first in a
/// fixed order, so ids (and hence monomial ordering) are reproducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u16);

struct SymbolInfo {
    name: String,
    latex: String,
    conjugate: Option<Symbol>,
}

struct Registry {
    infos: Vec<SymbolInfo>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("omega", r"\omega"),
    ("hbar", r"\hbar"),
    ("J", "J"),
    ("omega_o", r"\omega_o"),
    ("r", "r"),
    ("l", "l"),
    ("g4", "g_4"),
    ("delta", r"\delta"),
    ("Pi", r"\Pi"),
    ("Pistar", r"\Pi^*"),
];

static REGISTRY: LazyLock<RwLock<Registry>> = LazyLock::new(|| {
    let mut infos: Vec<SymbolInfo> = BUILTIN
        .iter()
        .map(|(n, l)| SymbolInfo { name: n.to_string(), latex: l.to_string(), conjugate: None })
        .collect();
    // Pi <-> Pistar
    infos[8].conjugate = Some(Symbol(9));
    infos[9].conjugate = Some(Symbol(8));
    RwLock::new(Registry { infos })
});

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("symbol `{0}` is already declared with a different conjugate partner")]
    ConjugateConflict(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Symbol {
    pub fn omega() -> Symbol {
        Symbol(0)
    }
    pub fn hbar() -> Symbol {
        Symbol(1)
    }

    /// Looks up or registers a real symbol.
    pub fn intern(name: &str) -> Symbol {
        if let Some(s) = Self::lookup(name) {
            return s;
        }
        let mut reg = REGISTRY.write().expect("symbol registry poisoned");
        if let Some(i) = reg.infos.iter().position(|i| i.name == name) {
            return Symbol(i as u16);
        }
        let latex = default_latex(name);
        reg.infos.push(SymbolInfo { name: name.to_string(), latex, conjugate: None });
        Symbol((reg.infos.len() - 1) as u16)
    }

    pub fn try_intern(name: &str) -> Result<Symbol, SymbolError> {
        if !valid_name(name) {
            return Err(SymbolError::InvalidName(name.to_string()));
        }
        Ok(Self::intern(name))
    }

    pub fn lookup(name: &str) -> Option<Symbol> {
        let reg = REGISTRY.read().expect("symbol registry poisoned");
        reg.infos.iter().position(|i| i.name == name).map(|i| Symbol(i as u16))
    }

    /// Declares `a` and `b` as complex-conjugate partners.
    pub fn declare_conjugate_pair(a: &str, b: &str) -> Result<(Symbol, Symbol), SymbolError> {
        let sa = Self::try_intern(a)?;
        let sb = Self::try_intern(b)?;
        let mut reg = REGISTRY.write().expect("symbol registry poisoned");
        for (x, y) in [(sa, sb), (sb, sa)] {
            match reg.infos[x.0 as usize].conjugate {
                Some(c) if c != y => return Err(SymbolError::ConjugateConflict(a.to_string())),
                _ => reg.infos[x.0 as usize].conjugate = Some(y),
            }
        }
        Ok((sa, sb))
    }

    pub fn name(self) -> String {
        REGISTRY.read().expect("symbol registry poisoned").infos[self.0 as usize].name.clone()
    }

    pub fn latex(self) -> String {
        REGISTRY.read().expect("symbol registry poisoned").infos[self.0 as usize].latex.clone()
    }

    /// The declared conjugate partner, or the symbol itself when real.
    pub fn conjugate(self) -> Symbol {
        REGISTRY.read().expect("symbol registry poisoned").infos[self.0 as usize]
            .conjugate
            .unwrap_or(self)
    }
}

fn default_latex(name: &str) -> String {
    const GREEK: &[&str] = &[
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "kappa", "lambda",
        "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega", "Omega",
        "Delta", "Gamma", "Pi", "Lambda",
    ];
    let (head, sub) = match name.split_once('_') {
        Some((h, s)) => (h, Some(s)),
        None => (name, None),
    };
    let head = if GREEK.contains(&head) { format!("\\{head}") } else { head.to_string() };
    match sub {
        Some(s) => format!("{head}_{{{s}}}"),
        None => head,
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Laurent monomial: product of symbols raised to nonzero integer powers,
/// sorted by symbol id.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Symbol, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Symbol, e: i32) -> Self {
        let mut v = SmallVec::new();
        if e != 0 {
            v.push((s, e));
        }
        Monomial(v)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i32)>>(pairs: I) -> Self {
        pairs.into_iter().fold(Monomial::one(), |acc, (s, e)| acc.mul(&Monomial::power(s, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> i32 {
        self.0.iter().find(|(x, _)| *x == s).map_or(0, |(_, e)| *e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        if o.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return o.clone();
        }
        let mut out: SmallVec<[(Symbol, i32); 4]> = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a.1 + b.1;
                    if e != 0 {
                        out.push((a.0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(s, e)| (s, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(s, e)| (s, e * k)).collect())
    }

    /// Swaps declared conjugate partners.
    pub fn conj(&self) -> Monomial {
        if self.0.iter().all(|(s, _)| s.conjugate() == *s) {
            return self.clone();
        }
        Monomial::from_pairs(self.0.iter().map(|&(s, e)| (s.conjugate(), e)))
    }

    /// Splits off the power of `s`: returns (exponent, remaining monomial).
    pub fn split(&self, s: Symbol) -> (i32, Monomial) {
        let e = self.exponent(s);
        (e, Monomial(self.0.iter().copied().filter(|(x, _)| *x != s).collect()))
    }

    pub fn degree_sum(&self) -> i32 {
        self.0.iter().map(|(_, e)| e.abs()).sum()
    }

    /// Entries sorted by symbol name, used for serialization and display so
    /// output never depends on interning order.
    pub fn by_name(&self) -> Vec<(String, i32)> {
        let mut v: Vec<(String, i32)> = self.0.iter().map(|(s, e)| (s.name(), *e)).collect();
        v.sort();
        v
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded first so that lower-degree monomials print first
        self.degree_sum().cmp(&other.degree_sum()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.name() } else { format!("{}^{}", s.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_conjugates() {
        let pi = Symbol::intern("Pi");
        assert_eq!(pi.conjugate().name(), "Pistar");
        assert_eq!(Symbol::omega().conjugate(), Symbol::omega());
    }

    #[test]
    fn monomial_exponents_cancel() {
        let w = Symbol::omega();
        let m = Monomial::power(w, -2).mul(&Monomial::power(w, 2));
        assert!(m.is_one());
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Symbol::try_intern("2x").is_err());
        assert!(Symbol::try_intern("x_2").is_ok());
    }
}
