//! Formal amplitudes: commutative polynomials in named symbols with
//! Gaussian-rational coefficients.
//!
//! Every symbol `x` has a formal conjugate written `x~`. Conjugation is an
//! involution on symbols and extends to polynomials by conjugating both
//! coefficients and symbols.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::GaussianRational;

/// The reserved name of the imaginary unit; it cannot be declared as a symbol.
pub const IMAGINARY_UNIT: &str = "i";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("invalid symbol name '{0}'")]
    InvalidName(String),
    #[error("symbol '{0}' declared twice")]
    Duplicate(String),
    #[error("undeclared symbol '{0}'")]
    Undeclared(String),
}

/// A formal amplitude symbol, or the formal conjugate of one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    base: Arc<str>,
    conjugate: bool,
}

impl Symbol {
    pub fn new(name: &str) -> Result<Self, SymbolError> {
        if !is_valid_identifier(name) || name == IMAGINARY_UNIT {
            return Err(SymbolError::InvalidName(name.to_string()));
        }
        Ok(Symbol { base: Arc::from(name), conjugate: false })
    }

    /// The declared name this symbol (or its conjugate) derives from.
    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn is_conjugate(&self) -> bool {
        self.conjugate
    }

    pub fn conj(&self) -> Symbol {
        Symbol { base: self.base.clone(), conjugate: !self.conjugate }
    }

    /// Name as written in text: `alpha` or `alpha~`.
    pub fn name(&self) -> String {
        self.to_string()
    }

    fn name_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        self.base
            .bytes()
            .chain(self.conjugate.then_some(b'~'))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name_bytes().cmp(other.name_bytes())
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if self.conjugate {
            f.write_str("~")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Declared symbol names in declaration order. Conjugates are implicit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    pub fn with_names<S: AsRef<str>>(names: &[S]) -> Result<Self, SymbolError> {
        let mut table = SymbolTable::new();
        for n in names {
            table.declare(n.as_ref())?;
        }
        Ok(table)
    }

    pub fn declare(&mut self, name: &str) -> Result<Symbol, SymbolError> {
        let sym = Symbol::new(name)?;
        if self.names.iter().any(|n| n == name) {
            return Err(SymbolError::Duplicate(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(sym)
    }

    /// Resolves `name` or `name~` against the declared names.
    pub fn lookup(&self, written: &str) -> Result<Symbol, SymbolError> {
        let (base, conjugate) = match written.strip_suffix('~') {
            Some(b) => (b, true),
            None => (written, false),
        };
        if !self.names.iter().any(|n| n == base) {
            return Err(SymbolError::Undeclared(written.to_string()));
        }
        let sym = Symbol::new(base)?;
        Ok(if conjugate { sym.conj() } else { sym })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A commutative monomial: a sorted multiset of symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Symbol>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_symbols(mut symbols: Vec<Symbol>) -> Self {
        symbols.sort();
        Monomial(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        // merge of two sorted lists
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        out.push(a.next().unwrap().clone());
                    } else {
                        out.push(b.next().unwrap().clone());
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn conj(&self) -> Monomial {
        Monomial::from_symbols(self.0.iter().map(Symbol::conj).collect())
    }
}

/// `alpha^2*beta~`; the empty monomial renders as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let sym = &self.0[i];
            let run = self.0[i..].iter().take_while(|s| *s == sym).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{sym}")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exact polynomial amplitude in canonical form: no zero coefficients,
/// terms ordered by monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicAmplitude {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SymbolicAmplitude {
    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        SymbolicAmplitude { terms }
    }

    pub fn integer(n: i64) -> Self {
        SymbolicAmplitude::constant(GaussianRational::from_integer(n))
    }

    pub fn symbol(sym: Symbol) -> Self {
        SymbolicAmplitude::term(GaussianRational::one(), Monomial::from_symbols(vec![sym]))
    }

    pub fn term(coeff: GaussianRational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        SymbolicAmplitude { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient if this amplitude contains no symbols.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn conj(&self) -> Self {
        SymbolicAmplitude {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return SymbolicAmplitude::zero();
        }
        SymbolicAmplitude {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn add_term(&mut self, monomial: Monomial, coeff: GaussianRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &SymbolicAmplitude) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = SymbolicAmplitude::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Leading term (smallest monomial in canonical order).
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next()
    }

    /// Replaces symbols by values. A value given for `x` is also used,
    /// conjugated, for `x~` unless `x~` is given explicitly.
    pub fn substitute(&self, values: &BTreeMap<String, GaussianRational>) -> Self {
        let lookup = |s: &Symbol| -> Option<GaussianRational> {
            values.get(&s.name()).cloned().or_else(|| {
                s.is_conjugate()
                    .then(|| values.get(s.base()).map(GaussianRational::conj))
                    .flatten()
            })
        };
        let mut out = SymbolicAmplitude::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for s in m.symbols() {
                match lookup(s) {
                    Some(v) => coeff = &coeff * &v,
                    None => rest.push(s.clone()),
                }
            }
            out.add_term(Monomial::from_symbols(rest), coeff);
        }
        out
    }

    /// Symbols (including conjugates) that occur in this amplitude.
    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().iter().cloned())
            .collect()
    }

    /// Renders a single term; may start with `-`.
    fn render_term(monomial: &Monomial, coeff: &GaussianRational) -> String {
        if monomial.is_one() {
            return coeff.to_string();
        }
        if coeff.is_one() {
            monomial.to_string()
        } else if *coeff == -GaussianRational::one() {
            format!("-{monomial}")
        } else if coeff.is_real() || coeff.is_imaginary() {
            format!("{coeff}*{monomial}")
        } else {
            format!("({coeff})*{monomial}")
        }
    }

}

pub(crate) fn join_signed_terms(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for (k, t) in terms.enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

impl Zero for SymbolicAmplitude {
    fn zero() -> Self {
        SymbolicAmplitude::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymbolicAmplitude {
    fn one() -> Self {
        SymbolicAmplitude::integer(1)
    }
}

impl Add for &SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn add(self, rhs: &SymbolicAmplitude) -> SymbolicAmplitude {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn add(mut self, rhs: SymbolicAmplitude) -> SymbolicAmplitude {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn sub(self, rhs: &SymbolicAmplitude) -> SymbolicAmplitude {
        self + &(-rhs)
    }
}

impl Sub for SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn sub(self, rhs: SymbolicAmplitude) -> SymbolicAmplitude {
        &self - &rhs
    }
}

impl Mul for &SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn mul(self, rhs: &SymbolicAmplitude) -> SymbolicAmplitude {
        let mut out = SymbolicAmplitude::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn mul(self, rhs: SymbolicAmplitude) -> SymbolicAmplitude {
        &self * &rhs
    }
}

impl Neg for &SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn neg(self) -> SymbolicAmplitude {
        SymbolicAmplitude {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SymbolicAmplitude {
    type Output = SymbolicAmplitude;
    fn neg(self) -> SymbolicAmplitude {
        -&self
    }
}

impl From<GaussianRational> for SymbolicAmplitude {
    fn from(c: GaussianRational) -> Self {
        SymbolicAmplitude::constant(c)
    }
}

impl From<Symbol> for SymbolicAmplitude {
    fn from(s: Symbol) -> Self {
        SymbolicAmplitude::symbol(s)
    }
}

/// Canonical text, e.g. `alpha + (2)i*beta - 1/2`. Zero renders as `0`.
impl fmt::Display for SymbolicAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered = join_signed_terms(
            self.terms.iter().map(|(m, c)| SymbolicAmplitude::render_term(m, c)),
        );
        f.write_str(&rendered)
    }
}

impl fmt::Debug for SymbolicAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether a coefficient can be written in front of `|bits>` without
/// parentheses.
pub(crate) fn coefficient_prefix(a: &SymbolicAmplitude) -> String {
    match a.as_constant() {
        Some(c) if c.is_one() => String::new(),
        Some(c) if c == -GaussianRational::one() => "-".to_string(),
        Some(c) if c.is_real() => c.to_string(),
        // pull the sign out when every term is negative: `-(beta)`
        None if a.terms().all(|(_, c)| c.is_real() && c.re.is_negative()) => format!("-({})", -a),
        _ => format!("({a})"),
    }
}
