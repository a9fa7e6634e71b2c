//! Unnormalized multi-qubit kets.
//!
//! A basis state is stored as an integer index whose most significant bit is
//! qubit 0, so ordering by index equals lexicographic ordering of bitstrings
//! and qubit 0 is the leftmost character of `|b0 b1 ...>`.
//!
//! The one-form dictionary `Ω ↔ |0>`, `Ω̄ ↔ |1>` is purely notational here:
//! basis kets are orthonormal by construction.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::scalar::GaussianRational;
use crate::symbolic::{coefficient_prefix, join_signed_terms, SymbolicAmplitude};

/// Largest register this crate simulates.
pub const MAX_QUBITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("malformed bitstring '{bits}' for a {n}-qubit register")]
    MalformedBitstring { bits: String, n: usize },
    #[error("size mismatch: {left} qubits vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },
    #[error("tensor product of {0} qubits exceeds the {MAX_QUBITS}-qubit limit")]
    TooLarge(usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("qubit index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("{bits} bits given for {targets} target qubits")]
    BitsLength { bits: usize, targets: usize },
    #[error("expected {expected} mode labels, got {found}")]
    LabelCount { expected: usize, found: usize },
}

/// Parses a bitstring over `{0,1}` of length `n` into a basis index.
pub fn basis_index(bits: &str, n: usize) -> Result<usize, StateError> {
    let malformed = || StateError::MalformedBitstring { bits: bits.to_string(), n };
    if bits.len() != n {
        return Err(malformed());
    }
    bits.bytes().try_fold(0usize, |acc, b| match b {
        b'0' => Ok(acc << 1),
        b'1' => Ok((acc << 1) | 1),
        _ => Err(malformed()),
    })
}

pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| if bit_of(index, q, n) { '1' } else { '0' })
        .collect()
}

/// Value of qubit `q` in basis index `index` of an `n`-qubit register.
#[inline]
pub fn bit_of(index: usize, q: usize, n: usize) -> bool {
    (index >> (n - 1 - q)) & 1 == 1
}

pub(crate) fn check_targets(targets: &[usize], n: usize) -> Result<(), StateError> {
    for (k, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(StateError::IndexOutOfRange { index: t, n });
        }
        if targets[..k].contains(&t) {
            return Err(StateError::DuplicateIndex(t));
        }
    }
    Ok(())
}

/// Sparse unnormalized ket. Mode labels are display metadata and do not take
/// part in equality.
#[derive(Clone)]
pub struct Ket {
    n_qubits: usize,
    terms: BTreeMap<usize, SymbolicAmplitude>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Ket {
    fn eq(&self, other: &Self) -> bool {
        self.n_qubits == other.n_qubits && self.terms == other.terms
    }
}

impl Eq for Ket {}

impl Ket {
    pub fn zero(n: usize) -> Result<Self, StateError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(StateError::QubitCount(n));
        }
        Ok(Ket { n_qubits: n, terms: BTreeMap::new(), labels: None })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, StateError> {
        let mut k = Ket::zero(n)?;
        if index >= 1 << n {
            return Err(StateError::MalformedBitstring { bits: index.to_string(), n });
        }
        k.terms.insert(index, SymbolicAmplitude::integer(1));
        Ok(k)
    }

    /// `|bits>` with unit amplitude.
    pub fn from_bits(bits: &str) -> Result<Self, StateError> {
        let n = bits.len();
        Ket::from_terms(n, [(bits, SymbolicAmplitude::integer(1))])
    }

    /// Builds a ket from `(bitstring, amplitude)` pairs, summing duplicates.
    pub fn from_terms<S, I>(n: usize, entries: I) -> Result<Self, StateError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (S, SymbolicAmplitude)>,
    {
        let mut k = Ket::zero(n)?;
        for (bits, amp) in entries {
            let idx = basis_index(bits.as_ref(), n)?;
            k.add_at(idx, &amp);
        }
        Ok(k)
    }

    /// Builds a ket from `(basis index, amplitude)` pairs.
    pub fn from_indexed<I>(n: usize, entries: I) -> Result<Self, StateError>
    where
        I: IntoIterator<Item = (usize, SymbolicAmplitude)>,
    {
        let mut k = Ket::zero(n)?;
        for (idx, amp) in entries {
            if idx >= 1 << n {
                return Err(StateError::MalformedBitstring { bits: idx.to_string(), n });
            }
            k.add_at(idx, &amp);
        }
        Ok(k)
    }

    pub(crate) fn add_at(&mut self, index: usize, amp: &SymbolicAmplitude) {
        if amp.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_default();
        slot.add_assign_ref(amp);
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &SymbolicAmplitude)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn amplitude(&self, index: usize) -> SymbolicAmplitude {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    pub fn amplitude_of(&self, bits: &str) -> Result<SymbolicAmplitude, StateError> {
        Ok(self.amplitude(basis_index(bits, self.n_qubits)?))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self, StateError> {
        if labels.len() != self.n_qubits {
            return Err(StateError::LabelCount { expected: self.n_qubits, found: labels.len() });
        }
        self.labels = Some(labels.iter().map(|s| s.as_ref().to_string()).collect());
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// True if every amplitude is a pure Gaussian rational.
    pub fn is_symbol_free(&self) -> bool {
        self.terms.values().all(SymbolicAmplitude::is_constant)
    }

    /// Dense coefficient vector; `None` if any amplitude is symbolic.
    pub fn constant_amplitudes(&self) -> Option<Vec<GaussianRational>> {
        let mut out = vec![GaussianRational::zero(); self.dim()];
        for (&idx, amp) in &self.terms {
            out[idx] = amp.as_constant()?;
        }
        Some(out)
    }

    pub fn scale(&self, c: &SymbolicAmplitude) -> Ket {
        let mut out = Ket { n_qubits: self.n_qubits, terms: BTreeMap::new(), labels: self.labels.clone() };
        for (&idx, amp) in &self.terms {
            out.add_at(idx, &(amp * c));
        }
        out
    }

    pub fn scale_by(&self, c: &GaussianRational) -> Ket {
        self.scale(&SymbolicAmplitude::constant(c.clone()))
    }

    pub fn add(&self, other: &Ket) -> Result<Ket, StateError> {
        self.check_same_size(other)?;
        let mut out = self.clone();
        for (&idx, amp) in &other.terms {
            out.add_at(idx, amp);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Ket) -> Result<Ket, StateError> {
        self.add(&other.scale_by(&-GaussianRational::from_integer(1)))
    }

    fn check_same_size(&self, other: &Ket) -> Result<(), StateError> {
        if self.n_qubits != other.n_qubits {
            return Err(StateError::SizeMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// `self ⊗ other`: bitstrings and labels concatenate.
    pub fn tensor(&self, other: &Ket) -> Result<Ket, StateError> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(StateError::TooLarge(n));
        }
        let mut out = Ket::zero(n)?;
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                out.add_at((i << other.n_qubits) | j, &(a * b));
            }
        }
        out.labels = match (&self.labels, &other.labels) {
            (Some(l), Some(r)) => Some(l.iter().chain(r).cloned().collect()),
            _ => None,
        };
        Ok(out)
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Ket) -> Result<SymbolicAmplitude, StateError> {
        self.check_same_size(other)?;
        let mut acc = SymbolicAmplitude::zero();
        for (idx, a) in &self.terms {
            if let Some(b) = other.terms.get(idx) {
                acc.add_assign_ref(&(&a.conj() * b));
            }
        }
        Ok(acc)
    }

    /// Post-selects on `targets` reading `bits`: keeps exactly the terms whose
    /// restriction to the targets equals `bits`. No renormalization.
    pub fn project(&self, targets: &[usize], bits: &str) -> Result<Ket, StateError> {
        if bits.len() != targets.len() {
            return Err(StateError::BitsLength { bits: bits.len(), targets: targets.len() });
        }
        check_targets(targets, self.n_qubits)?;
        let pattern = basis_index(bits, targets.len())?;
        let keep = |idx: usize| {
            targets.iter().enumerate().all(|(k, &q)| {
                bit_of(idx, q, self.n_qubits) == bit_of(pattern, k, targets.len())
            })
        };
        Ok(Ket {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().filter(|(i, _)| keep(**i)).map(|(i, a)| (*i, a.clone())).collect(),
            labels: self.labels.clone(),
        })
    }

    /// Reorders qubits: qubit `q` of `self` becomes qubit `perm[q]` of the result.
    pub fn permute(&self, perm: &[usize]) -> Result<Ket, StateError> {
        if perm.len() != self.n_qubits {
            return Err(StateError::SizeMismatch { left: self.n_qubits, right: perm.len() });
        }
        check_targets(perm, self.n_qubits)?;
        let n = self.n_qubits;
        let mut out = Ket::zero(n)?;
        for (&idx, a) in &self.terms {
            let mut new = 0usize;
            for (q, &p) in perm.iter().enumerate() {
                if bit_of(idx, q, n) {
                    new |= 1 << (n - 1 - p);
                }
            }
            out.add_at(new, a);
        }
        Ok(out)
    }

    /// Applies `f` to every amplitude, dropping zeros.
    pub fn map_amplitudes(&self, f: impl Fn(&SymbolicAmplitude) -> SymbolicAmplitude) -> Ket {
        let mut out = Ket { n_qubits: self.n_qubits, terms: BTreeMap::new(), labels: self.labels.clone() };
        for (&idx, a) in &self.terms {
            out.add_at(idx, &f(a));
        }
        out
    }

    /// Finds `s` with `self = s·other`, if one exists as a constant scalar.
    pub fn scalar_ratio(&self, other: &Ket) -> Option<GaussianRational> {
        if self.n_qubits != other.n_qubits || self.terms.len() != other.terms.len() {
            return None;
        }
        let (idx, theirs) = other.terms.iter().next()?;
        let mine = self.terms.get(idx)?;
        let (m_o, c_o) = theirs.leading()?;
        let (m_s, c_s) = mine.leading()?;
        if m_o != m_s {
            return None;
        }
        let s = c_s.checked_div(c_o)?;
        (other.scale_by(&s) == *self).then_some(s)
    }
}

/// Canonical ket text: `|01> + |10>`, `(alpha)|0> - 2|1>`, `0` for zero.
impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.n_qubits;
        let rendered = join_signed_terms(self.terms.iter().map(|(&idx, a)| {
            let bits = bitstring(idx, n);
            format!("{}|{bits}>", coefficient_prefix(a))
        }));
        f.write_str(&rendered)
    }
}

impl fmt::Debug for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ket[{}]({})", self.n_qubits, self)
    }
}
