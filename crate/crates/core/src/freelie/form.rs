use std::cmp::Ordering;
use std::fmt;

/// Integer linear combination `Σ c_i m_{i+1}` of summation indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexForm(Vec<i32>);

impl IndexForm {
    pub fn zero() -> Self {
        IndexForm(Vec::new())
    }

    /// The single index `m_{v+1}`.
    pub fn var(v: usize) -> Self {
        let mut c = vec![0; v + 1];
        c[v] = 1;
        IndexForm(c)
    }

    pub fn from_coeffs(mut c: Vec<i32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        IndexForm(c)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn coeff(&self, v: usize) -> i32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// One past the largest index with a nonzero coefficient.
    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(v, c)| (v, *c))
    }

    pub fn add(&self, o: &IndexForm) -> IndexForm {
        let n = self.0.len().max(o.0.len());
        IndexForm::from_coeffs((0..n).map(|v| self.coeff(v) + o.coeff(v)).collect())
    }

    pub fn neg(&self) -> IndexForm {
        IndexForm(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: i32) -> IndexForm {
        IndexForm::from_coeffs(self.0.iter().map(|c| c * k).collect())
    }

    /// Renumbers index `v` to `v + offset`.
    pub fn shift(&self, offset: usize) -> IndexForm {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; offset];
        c.extend_from_slice(&self.0);
        IndexForm(c)
    }

    /// Replaces `m_{v+1}` by `sub`.
    pub fn substitute(&self, v: usize, sub: &IndexForm) -> IndexForm {
        let c = self.coeff(v);
        if c == 0 {
            return self.clone();
        }
        let mut rest = self.0.clone();
        rest[v] = 0;
        IndexForm::from_coeffs(rest).add(&sub.scale(c))
    }

    /// Applies `m_{v+1} → sign_v m_{perm_v+1}`.
    pub fn relabel(&self, perm: &[(usize, i32)]) -> IndexForm {
        let n = perm.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let mut c = vec![0; n];
        for (v, k) in self.vars() {
            let (to, s) = perm[v];
            c[to] += s * k;
        }
        IndexForm::from_coeffs(c)
    }

    /// Sign making the first nonzero coefficient positive.
    pub fn leading_sign(&self) -> i32 {
        self.0.iter().find(|c| **c != 0).map_or(1, |c| c.signum())
    }

    pub fn normalized(&self) -> (IndexForm, i32) {
        let s = self.leading_sign();
        (self.scale(s), s)
    }

    pub fn eval(&self, values: &[i32]) -> i64 {
        self.vars().map(|(v, c)| c as i64 * values[v] as i64).sum()
    }

    /// Whether every index in the form has been assigned (`assigned` is a prefix length).
    pub fn determined_by(&self, assigned: usize) -> bool {
        self.0.len() <= assigned
    }

    /// Writes the form with the given index name, e.g. `m_1 - m_2`.
    pub fn write_with(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (v, c) in self.vars() {
            let name = if latex { format!("m_{}", v + 1) } else { format!("m{}", v + 1) };
            match (first, c) {
                (true, 1) => write!(f, "{name}")?,
                (true, -1) => write!(f, "-{name}")?,
                (true, c) => write!(f, "{c}{name}")?,
                (false, 1) => write!(f, " + {name}")?,
                (false, -1) => write!(f, " - {name}")?,
                (false, c) if c < 0 => write!(f, " - {}{name}", -c)?,
                (false, c) => write!(f, " + {c}{name}")?,
            }
            first = false;
        }
        Ok(())
    }

    pub fn is_single(&self) -> bool {
        self.vars().count() == 1
    }
}

/// Nonzero forms first, then by descending coefficients, so `m1 < -m1 < 0`.
impl Ord for IndexForm {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        let n = self.0.len().max(o.0.len());
        for v in 0..n {
            match o.coeff(v).cmp(&self.coeff(v)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for IndexForm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for IndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

impl fmt::Debug for IndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Nested bracket over Fourier components `H_form`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tree {
    Node(Box<Tree>, Box<Tree>),
    Leaf(IndexForm),
}

impl Tree {
    pub fn leaf(f: IndexForm) -> Tree {
        Tree::Leaf(f)
    }

    pub fn node(a: Tree, b: Tree) -> Tree {
        Tree::Node(Box::new(a), Box::new(b))
    }

    pub fn nodes(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(a, b) => 1 + a.nodes() + b.nodes(),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&IndexForm> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a IndexForm>) {
        match self {
            Tree::Leaf(f) => out.push(f),
            Tree::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn map_forms(&self, g: &impl Fn(&IndexForm) -> IndexForm) -> Tree {
        match self {
            Tree::Leaf(f) => Tree::Leaf(g(f)),
            Tree::Node(a, b) => Tree::node(a.map_forms(g), b.map_forms(g)),
        }
    }

    /// Sum of the leaf indices.
    pub fn total(&self) -> IndexForm {
        match self {
            Tree::Leaf(f) => f.clone(),
            Tree::Node(a, b) => a.total().add(&b.total()),
        }
    }

    /// Sums of every subtree (composite indices), including leaves and the root.
    pub fn composites(&self, out: &mut Vec<IndexForm>) -> IndexForm {
        let t = match self {
            Tree::Leaf(f) => f.clone(),
            Tree::Node(a, b) => a.composites(out).add(&b.composites(out)),
        };
        out.push(t.clone());
        t
    }

    /// Whether some bracket has two identical arguments.
    pub fn has_trivial_bracket(&self) -> bool {
        match self {
            Tree::Leaf(_) => false,
            Tree::Node(a, b) => a == b || a.has_trivial_bracket() || b.has_trivial_bracket(),
        }
    }

    /// Every child ordering obtainable by antisymmetry, with its sign.
    pub fn orderings(&self) -> Vec<(Tree, i32)> {
        match self {
            Tree::Leaf(_) => vec![(self.clone(), 1)],
            Tree::Node(a, b) => {
                let (la, lb) = (a.orderings(), b.orderings());
                let mut out = Vec::with_capacity(2 * la.len() * lb.len());
                for (x, sx) in &la {
                    for (y, sy) in &lb {
                        out.push((Tree::node(x.clone(), y.clone()), sx * sy));
                        out.push((Tree::node(y.clone(), x.clone()), -sx * sy));
                    }
                }
                out
            }
        }
    }

    pub fn write_with(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        match self {
            Tree::Leaf(x) => {
                if latex {
                    f.write_str("\\hat{H}_{")?;
                    x.write_with(f, true)?;
                    f.write_str("}")
                } else {
                    f.write_str("H_{")?;
                    x.write_with(f, false)?;
                    f.write_str("}")
                }
            }
            Tree::Node(a, b) => {
                f.write_str("[")?;
                a.write_with(f, latex)?;
                f.write_str(", ")?;
                b.write_with(f, latex)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}
