//! Exact sparse linear maps on qubit registers, built from the generator set
//! `{I, *, ↑, ↓}` by sum, composition, tensor product and scaling.
//!
//! Operators need not be unitary: `↑` and `↓` are nilpotent.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::ket::{bit_of, check_targets, Ket, StateError, MAX_QUBITS};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("arity mismatch: operator acts on {expected} qubits, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operator on {0} qubits exceeds the {MAX_QUBITS}-qubit limit")]
    TooLarge(usize),
    #[error("no operator with index {0}; valid indices are 1..=4")]
    NoSuchIndex(usize),
    #[error("empty operator expression")]
    Empty,
    #[error(transparent)]
    State(#[from] StateError),
}

/// The four one-qubit building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Identity,
    /// Hodge star: `*|0> = -|0>`, `*|1> = |1>`.
    Star,
    /// `↑|0> = |1>`, `↑|1> = 0`.
    Raise,
    /// `↓|1> = |0>`, `↓|0> = 0`.
    Lower,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Identity, Generator::Star, Generator::Raise, Generator::Lower];

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Identity => "I",
            Generator::Star => "*",
            Generator::Raise => "↑",
            Generator::Lower => "↓",
        }
    }

    pub fn operator(self) -> Operator {
        let one = GaussianRational::one;
        let entries = match self {
            Generator::Identity => vec![(0, 0, one()), (1, 1, one())],
            Generator::Star => vec![(0, 0, -one()), (1, 1, one())],
            Generator::Raise => vec![(1, 0, one())],
            Generator::Lower => vec![(0, 1, one())],
        };
        Operator::from_entries(1, entries).expect("generator matrices are 2x2")
    }
}

/// A `2^k × 2^k` matrix of Gaussian rationals, stored by column.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    arity: usize,
    // cols[c] maps row -> nonzero entry
    cols: Vec<BTreeMap<usize, GaussianRational>>,
}

impl Operator {
    pub fn zero(arity: usize) -> Result<Self, OperatorError> {
        if arity == 0 || arity > MAX_QUBITS {
            return Err(OperatorError::TooLarge(arity));
        }
        Ok(Operator { arity, cols: vec![BTreeMap::new(); 1 << arity] })
    }

    pub fn identity(arity: usize) -> Result<Self, OperatorError> {
        let mut op = Operator::zero(arity)?;
        for (c, col) in op.cols.iter_mut().enumerate() {
            col.insert(c, GaussianRational::one());
        }
        Ok(op)
    }

    /// `|b><b|` on a register of `bits.len()` qubits.
    pub fn projector(bits: &str) -> Result<Self, OperatorError> {
        let n = bits.len();
        let idx = crate::ket::basis_index(bits, n)?;
        Operator::from_entries(n, [(idx, idx, GaussianRational::one())])
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_entries<I>(arity: usize, entries: I) -> Result<Self, OperatorError>
    where
        I: IntoIterator<Item = (usize, usize, GaussianRational)>,
    {
        let mut op = Operator::zero(arity)?;
        let dim = op.dim();
        for (r, c, v) in entries {
            if r >= dim || c >= dim {
                return Err(StateError::IndexOutOfRange { index: r.max(c), n: dim }.into());
            }
            op.add_entry(r, c, &v);
        }
        Ok(op)
    }

    fn add_entry(&mut self, r: usize, c: usize, v: &GaussianRational) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[c];
        let slot = col.entry(r).or_default();
        *slot += v;
        if slot.is_zero() {
            col.remove(&r);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> GaussianRational {
        self.cols
            .get(col)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    fn check_same_arity(&self, other: &Operator) -> Result<(), OperatorError> {
        if self.arity != other.arity {
            return Err(OperatorError::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &Operator) -> Result<Operator, OperatorError> {
        self.check_same_arity(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator, OperatorError> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, s: &GaussianRational) -> Operator {
        let mut out = Operator { arity: self.arity, cols: vec![BTreeMap::new(); self.dim()] };
        for (r, c, v) in self.entries() {
            out.add_entry(r, c, &(v * s));
        }
        out
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Operator) -> Result<Operator, OperatorError> {
        self.check_same_arity(other)?;
        let mut out = Operator { arity: self.arity, cols: vec![BTreeMap::new(); self.dim()] };
        for (c, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    out.add_entry(*r, c, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Operator {
        let mut acc = Operator::identity(self.arity).expect("arity already validated");
        for _ in 0..exp {
            acc = self.compose(&acc).expect("same arity");
        }
        acc
    }

    /// Kronecker product; `self` acts on the leading (leftmost) qubits.
    pub fn tensor(&self, other: &Operator) -> Result<Operator, OperatorError> {
        let arity = self.arity + other.arity;
        let mut out = Operator::zero(arity).map_err(|_| OperatorError::TooLarge(arity))?;
        let shift = other.arity;
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.add_entry((r1 << shift) | r2, (c1 << shift) | c2, &(a * b));
            }
        }
        Ok(out)
    }

    /// Lifts `self` to an `n`-qubit register acting on `targets` in order:
    /// `targets[0]` plays the role of this operator's qubit 0.
    pub fn embed(&self, targets: &[usize], n: usize) -> Result<Operator, OperatorError> {
        if targets.len() != self.arity {
            return Err(OperatorError::ArityMismatch { expected: self.arity, found: targets.len() });
        }
        check_targets(targets, n)?;
        let mut out = Operator::zero(n)?;
        for c in 0..1usize << n {
            let sub_c = extract(c, targets, n);
            for (sub_r, v) in &self.cols[sub_c] {
                out.add_entry(deposit(c, *sub_r, targets, n), c, v);
            }
        }
        Ok(out)
    }

    /// Exact matrix-vector product on a full-width ket.
    pub fn apply(&self, x: &Ket) -> Result<Ket, OperatorError> {
        if x.n_qubits() != self.arity {
            return Err(OperatorError::ArityMismatch { expected: self.arity, found: x.n_qubits() });
        }
        let mut out = Ket::zero(self.arity)?;
        for (c, amp) in x.terms() {
            for (r, v) in &self.cols[c] {
                out.add_at(*r, &amp.scale(v));
            }
        }
        Ok(relabel(out, x))
    }

    /// Applies this operator to `targets` of `x` without materializing the
    /// embedded `2^n × 2^n` matrix. Agrees with `embed(targets, n).apply(x)`.
    pub fn apply_at(&self, x: &Ket, targets: &[usize]) -> Result<Ket, OperatorError> {
        let n = x.n_qubits();
        if targets.len() != self.arity {
            return Err(OperatorError::ArityMismatch { expected: self.arity, found: targets.len() });
        }
        check_targets(targets, n)?;
        let mut out = Ket::zero(n)?;
        for (c, amp) in x.terms() {
            let sub_c = extract(c, targets, n);
            for (sub_r, v) in &self.cols[sub_c] {
                out.add_at(deposit(c, *sub_r, targets, n), &amp.scale(v));
            }
        }
        Ok(relabel(out, x))
    }
}

fn relabel(out: Ket, like: &Ket) -> Ket {
    match like.labels() {
        Some(l) => out.with_labels(l).expect("same width"),
        None => out,
    }
}

/// Reads the target bits of `index` into a sub-register index.
fn extract(index: usize, targets: &[usize], n: usize) -> usize {
    targets
        .iter()
        .fold(0, |acc, &q| (acc << 1) | usize::from(bit_of(index, q, n)))
}

/// Overwrites the target bits of `index` with the bits of `sub`.
fn deposit(index: usize, sub: usize, targets: &[usize], n: usize) -> usize {
    let k = targets.len();
    targets.iter().enumerate().fold(index, |acc, (j, &q)| {
        let mask = 1 << (n - 1 - q);
        if (sub >> (k - 1 - j)) & 1 == 1 {
            acc | mask
        } else {
            acc & !mask
        }
    })
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator[{}] {{", self.arity)?;
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "}}")
    }
}

/// A symbolic recipe for an operator. Gates are defined as recipes over the
/// generators and evaluated on demand, so the same recipe can be re-evaluated
/// by an independent matrix implementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpExpr {
    Gen(Generator),
    Identity(usize),
    /// `|b><b|` on one qubit.
    Projector(bool),
    Sum(Vec<OpExpr>),
    /// Written order: `Product([A, B])` is `A·B`, so `B` acts first.
    Product(Vec<OpExpr>),
    /// `Tensor([A, B])` is `A ⊗ B` with `A` on the leading qubits.
    Tensor(Vec<OpExpr>),
    Scale(GaussianRational, Box<OpExpr>),
}

impl OpExpr {
    pub fn star() -> OpExpr {
        OpExpr::Gen(Generator::Star)
    }

    pub fn raise() -> OpExpr {
        OpExpr::Gen(Generator::Raise)
    }

    pub fn lower() -> OpExpr {
        OpExpr::Gen(Generator::Lower)
    }

    pub fn id() -> OpExpr {
        OpExpr::Identity(1)
    }

    pub fn product(factors: impl IntoIterator<Item = OpExpr>) -> OpExpr {
        OpExpr::Product(factors.into_iter().collect())
    }

    pub fn sum(terms: impl IntoIterator<Item = OpExpr>) -> OpExpr {
        OpExpr::Sum(terms.into_iter().collect())
    }

    pub fn tensor(factors: impl IntoIterator<Item = OpExpr>) -> OpExpr {
        OpExpr::Tensor(factors.into_iter().collect())
    }

    pub fn scaled(self, s: GaussianRational) -> OpExpr {
        OpExpr::Scale(s, Box::new(self))
    }

    pub fn negated(self) -> OpExpr {
        self.scaled(-GaussianRational::one())
    }

    /// Number of qubits the expression acts on.
    pub fn arity(&self) -> Result<usize, OperatorError> {
        match self {
            OpExpr::Gen(_) | OpExpr::Projector(_) => Ok(1),
            OpExpr::Identity(k) => Ok(*k),
            OpExpr::Scale(_, e) => e.arity(),
            OpExpr::Sum(es) | OpExpr::Product(es) => {
                let first = es.first().ok_or(OperatorError::Empty)?.arity()?;
                for e in &es[1..] {
                    let a = e.arity()?;
                    if a != first {
                        return Err(OperatorError::ArityMismatch { expected: first, found: a });
                    }
                }
                Ok(first)
            }
            OpExpr::Tensor(es) => {
                if es.is_empty() {
                    return Err(OperatorError::Empty);
                }
                es.iter().map(OpExpr::arity).sum()
            }
        }
    }

    pub fn eval(&self) -> Result<Operator, OperatorError> {
        match self {
            OpExpr::Gen(g) => Ok(g.operator()),
            OpExpr::Identity(k) => Operator::identity(*k),
            OpExpr::Projector(b) => Operator::projector(if *b { "1" } else { "0" }),
            OpExpr::Scale(s, e) => Ok(e.eval()?.scale(s)),
            OpExpr::Sum(es) => fold_nonempty(es, |a, b| a.add(&b)),
            OpExpr::Product(es) => fold_nonempty(es, |a, b| a.compose(&b)),
            OpExpr::Tensor(es) => fold_nonempty(es, |a, b| a.tensor(&b)),
        }
    }
}

fn fold_nonempty(
    es: &[OpExpr],
    f: impl Fn(Operator, Operator) -> Result<Operator, OperatorError>,
) -> Result<Operator, OperatorError> {
    let (first, rest) = es.split_first().ok_or(OperatorError::Empty)?;
    rest.iter().try_fold(first.eval()?, |acc, e| f(acc, e.eval()?))
}

/// Compact notation: `*↑ + ↑*`, `(*⊗↓) + (↑⊗*)`, `-(λ)`.
impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atomic(e: &OpExpr) -> bool {
            matches!(e, OpExpr::Gen(_) | OpExpr::Identity(_) | OpExpr::Projector(_))
        }
        fn wrap(e: &OpExpr) -> String {
            if atomic(e) { e.to_string() } else { format!("({e})") }
        }
        match self {
            OpExpr::Gen(g) => f.write_str(g.symbol()),
            OpExpr::Identity(1) => f.write_str("I"),
            OpExpr::Identity(k) => write!(f, "I{k}"),
            OpExpr::Projector(b) => write!(f, "P{}", u8::from(*b)),
            OpExpr::Sum(es) => {
                let parts: Vec<String> = es
                    .iter()
                    .map(|e| if matches!(e, OpExpr::Sum(_)) { format!("({e})") } else { e.to_string() })
                    .collect();
                f.write_str(&parts.join(" + "))
            }
            OpExpr::Product(es) => {
                let parts: Vec<String> = es.iter().map(wrap).collect();
                f.write_str(&parts.join(""))
            }
            OpExpr::Tensor(es) => {
                let parts: Vec<String> = es.iter().map(wrap).collect();
                f.write_str(&parts.join("⊗"))
            }
            OpExpr::Scale(s, e) if *s == -GaussianRational::one() => write!(f, "-{}", wrap(e)),
            OpExpr::Scale(s, e) => write!(f, "{s}·{}", wrap(e)),
        }
    }
}
