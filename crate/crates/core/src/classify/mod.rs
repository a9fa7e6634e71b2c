//! SLOCC classification of 2- and 3-qubit kets and the black-hole reading of
//! each class.
//!
//! For three qubits the class follows from the flattening ranks and the
//! hyperdeterminant:
//!
//! | class          | ranks            | Det  | FTS rank   |
//! |----------------|------------------|------|------------|
//! | NULL           | (0,0,0)          | 0    | 0          |
//! | A-B-C          | (1,1,1)          | 0    | 1          |
//! | A-BC/B-CA/C-AB | one rank is 1    | 0    | 2a/2b/2c   |
//! | W              | (2,2,2)          | 0    | 3          |
//! | GHZ            | (2,2,2)          | ≠ 0  | 4          |
//!
//! The separated party of a biseparable state picks the rank label:
//! A → 2a, B → 2b, C → 2c.

mod invariants;
mod transition;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num::{BigRational, ToPrimitive, Zero};
use thiserror::Error;

use crate::ket::Ket;
use crate::par::{self, Execution};
use crate::scalar::GaussianRational;
use crate::symbolic::SymbolicAmplitude;

pub use invariants::{flattening_ranks, hyperdeterminant, hyperdeterminant_of, three_tangle, ThreeTangle};
pub use transition::{transition_report, TransitionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("symbolic amplitudes not classifiable")]
    Symbolic,
    #[error("expected a {expected}-qubit state, got {found} qubits")]
    QubitCount { expected: usize, found: usize },
    #[error("classification supports 2 or 3 qubits, got {0}")]
    Unsupported(usize),
    #[error("the zero state has no 3-tangle")]
    ZeroState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Party> {
        Party::ALL.get(i).copied()
    }

    /// `A-BC`, `B-CA`, `C-AB`.
    pub fn bipartition(self) -> &'static str {
        match self {
            Party::A => "A-BC",
            Party::B => "B-CA",
            Party::C => "C-AB",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SloccClass {
    Null,
    Separable,
    /// The given party factors off from the other two.
    Biseparable(Party),
    W,
    Ghz,
    /// Two-qubit entangled state.
    Entangled,
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SloccClass::Null => f.write_str("NULL"),
            SloccClass::Separable => f.write_str("SEPARABLE"),
            SloccClass::Biseparable(p) => write!(f, "BISEPARABLE({})", p.bipartition()),
            SloccClass::W => f.write_str("W"),
            SloccClass::Ghz => f.write_str("GHZ"),
            SloccClass::Entangled => f.write_str("ENTANGLED"),
        }
    }
}

/// Freudenthal-triple-system rank of a 3-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FtsRank {
    Zero,
    One,
    TwoA,
    TwoB,
    TwoC,
    Three,
    Four,
}

impl FtsRank {
    /// Numeric rank, ignoring the 2a/2b/2c distinction.
    pub fn level(self) -> u8 {
        match self {
            FtsRank::Zero => 0,
            FtsRank::One => 1,
            FtsRank::TwoA | FtsRank::TwoB | FtsRank::TwoC => 2,
            FtsRank::Three => 3,
            FtsRank::Four => 4,
        }
    }
}

impl fmt::Display for FtsRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FtsRank::Zero => "0",
            FtsRank::One => "1",
            FtsRank::TwoA => "2a",
            FtsRank::TwoB => "2b",
            FtsRank::TwoC => "2c",
            FtsRank::Three => "3",
            FtsRank::Four => "4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SusyFraction {
    Half,
    Quarter,
    Eighth,
    /// No discriminator between the two is available.
    EighthOrBroken,
}

impl SusyFraction {
    /// Phrase used in transition text, e.g. `1/4 preserved`.
    pub fn phrase(self) -> &'static str {
        match self {
            SusyFraction::Half => "1/2 preserved",
            SusyFraction::Quarter => "1/4 preserved",
            SusyFraction::Eighth => "1/8 preserved",
            SusyFraction::EighthOrBroken => "1/8 preserved or completely broken",
        }
    }
}

impl fmt::Display for SusyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SusyFraction::Half => "1/2",
            SusyFraction::Quarter => "1/4",
            SusyFraction::Eighth => "1/8",
            SusyFraction::EighthOrBroken => "1/8-or-broken",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeClass {
    Small,
    Large,
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeClass::Small => "SMALL",
            SizeClass::Large => "LARGE",
        })
    }
}

pub const GHZ_BRANE_NOTE: &str = "four D3-branes intersecting over a string";

/// STU black-hole attributes attached to a nonzero 3-qubit class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackHole {
    pub susy: SusyFraction,
    pub size: SizeClass,
    pub attractor: bool,
    pub brane_note: Option<&'static str>,
}

impl BlackHole {
    fn for_class(class: SloccClass) -> Option<BlackHole> {
        let small = |susy| BlackHole { susy, size: SizeClass::Small, attractor: false, brane_note: None };
        match class {
            SloccClass::Separable => Some(small(SusyFraction::Half)),
            SloccClass::Biseparable(_) => Some(small(SusyFraction::Quarter)),
            SloccClass::W => Some(small(SusyFraction::Eighth)),
            SloccClass::Ghz => Some(BlackHole {
                susy: SusyFraction::EighthOrBroken,
                size: SizeClass::Large,
                attractor: true,
                brane_note: Some(GHZ_BRANE_NOTE),
            }),
            SloccClass::Null | SloccClass::Entangled => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub n_qubits: usize,
    pub flattening_ranks: Vec<usize>,
    /// Cayley hyperdeterminant for 3 qubits, `a00·a11 − a01·a10` for 2.
    pub determinant: GaussianRational,
    pub three_tangle: Option<ThreeTangle>,
    pub slocc_class: SloccClass,
    pub fts_rank: Option<FtsRank>,
    pub black_hole: Option<BlackHole>,
    /// `π·sqrt(|Det|)` on the raw amplitudes; display only.
    pub entropy_display: Option<f64>,
}

impl EntanglementReport {
    pub fn hyperdeterminant(&self) -> Option<&GaussianRational> {
        (self.n_qubits == 3).then_some(&self.determinant)
    }

    /// Exact `|Det|²`.
    pub fn det_abs_sq(&self) -> BigRational {
        self.determinant.norm_sqr()
    }

    /// Class name with the 3-qubit product label spelled out.
    pub fn class_label(&self) -> String {
        match (self.slocc_class, self.n_qubits) {
            (SloccClass::Separable, 3) => "SEPARABLE(A-B-C)".to_string(),
            (c, _) => c.to_string(),
        }
    }

    pub fn size(&self) -> Option<SizeClass> {
        self.black_hole.as_ref().map(|b| b.size)
    }

    pub fn susy(&self) -> Option<SusyFraction> {
        self.black_hole.as_ref().map(|b| b.susy)
    }

    pub fn attractor(&self) -> bool {
        self.black_hole.as_ref().is_some_and(|b| b.attractor)
    }
}

/// Classifies a symbol-free 2- or 3-qubit ket.
pub fn classify(x: &Ket) -> Result<EntanglementReport, ClassifyError> {
    match x.n_qubits() {
        2 => classify_pair(x),
        3 => classify_triple(x),
        n => Err(ClassifyError::Unsupported(n)),
    }
}

fn classify_pair(x: &Ket) -> Result<EntanglementReport, ClassifyError> {
    let amps = invariants::constant_amplitudes(x, 2)?;
    let ranks = invariants::flattening_ranks_of(&amps, 2);
    let det = invariants::pair_determinant(&amps);
    let slocc_class = if x.is_zero() {
        SloccClass::Null
    } else if det.is_zero() {
        SloccClass::Separable
    } else {
        SloccClass::Entangled
    };
    Ok(EntanglementReport {
        n_qubits: 2,
        flattening_ranks: ranks,
        determinant: det,
        three_tangle: None,
        slocc_class,
        fts_rank: None,
        black_hole: None,
        entropy_display: None,
    })
}

fn classify_triple(x: &Ket) -> Result<EntanglementReport, ClassifyError> {
    let amps = invariants::constant_amplitudes(x, 3)?;
    let ranks = invariants::flattening_ranks_of(&amps, 3);
    let det = invariants::hyperdeterminant_of(&amps);
    let ones: Vec<usize> = (0..3).filter(|&p| ranks[p] == 1).collect();

    let (slocc_class, fts_rank) = if ranks.iter().all(|&r| r == 0) {
        (SloccClass::Null, FtsRank::Zero)
    } else if ones.len() == 3 {
        (SloccClass::Separable, FtsRank::One)
    } else if ones.len() == 1 {
        let party = Party::from_index(ones[0]).expect("party index < 3");
        let rank = [FtsRank::TwoA, FtsRank::TwoB, FtsRank::TwoC][ones[0]];
        (SloccClass::Biseparable(party), rank)
    } else if ones.is_empty() && !det.is_zero() {
        (SloccClass::Ghz, FtsRank::Four)
    } else if ones.is_empty() {
        (SloccClass::W, FtsRank::Three)
    } else {
        // two rank-1 parties force the third to rank 1 as well
        unreachable!("flattening ranks {ranks:?} are not realizable");
    };

    let entropy = PI * det.norm_sqr().to_f64().unwrap_or(f64::NAN).sqrt().sqrt();
    Ok(EntanglementReport {
        n_qubits: 3,
        flattening_ranks: ranks,
        three_tangle: invariants::three_tangle_of(&amps, &det),
        determinant: det,
        slocc_class,
        fts_rank: Some(fts_rank),
        black_hole: BlackHole::for_class(slocc_class),
        entropy_display: Some(entropy),
    })
}

/// Classifies every ket, preserving input order.
pub fn classify_batch(kets: &[Ket], exec: Execution) -> Vec<Result<EntanglementReport, ClassifyError>> {
    par::map_collect(kets, exec, classify)
}

/// The `index`-th `n`-qubit state whose amplitudes are drawn from
/// `alphabet`, enumerating amplitude vectors in mixed-radix order with
/// basis state 0 as the most significant digit.
pub fn small_coefficient_state(alphabet: &[i64], n: usize, mut index: usize) -> Ket {
    let base = alphabet.len();
    let dim = 1usize << n;
    let mut digits = vec![0usize; dim];
    for slot in digits.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    Ket::from_indexed(
        n,
        digits
            .into_iter()
            .enumerate()
            .map(|(b, d)| (b, SymbolicAmplitude::integer(alphabet[d]))),
    )
    .expect("n is within the register limit")
}

/// Number of `n`-qubit states over `alphabet`.
pub fn small_coefficient_count(alphabet: &[i64], n: usize) -> usize {
    alphabet.len().pow(1 << n)
}

/// Class of every 3-qubit state with amplitudes drawn from `alphabet`.
pub fn census(alphabet: &[i64], exec: Execution) -> BTreeMap<SloccClass, usize> {
    let total = small_coefficient_count(alphabet, 3);
    let classes = par::map_range(total, exec, |idx| {
        classify(&small_coefficient_state(alphabet, 3, idx))
            .expect("integer 3-qubit states are classifiable")
            .slocc_class
    });
    let mut counts = BTreeMap::new();
    for c in classes {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

/// `%.12g`-style rendering used for every float display value.
pub fn format_display_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=11).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        return format!("{}e{e}", trim_fraction(mantissa));
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
