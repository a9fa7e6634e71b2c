//! Circuit IR, executor and verdicts.

pub mod claims;
mod dsl;
pub mod library;

use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::gates::Gate;
use crate::ket::{Ket, StateError};
use crate::operator::OperatorError;
use crate::scalar::GaussianRational;
use crate::symbolic::SymbolTable;

pub use dsl::{parse_circuit, render, ParseError};

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("gate {gate} needs {expected} targets, got {found}")]
    Arity { gate: Gate, expected: usize, found: usize },
    #[error("initial state has {found} qubits, circuit declares {expected}")]
    InitialState { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Apply { gate: Gate, targets: Vec<usize> },
    /// Post-selection on `targets` reading `bits`, without renormalization.
    Project { bits: String, targets: Vec<usize> },
    /// Compares the current state against a ket; does not advance the trace.
    Expect(Ket),
}

fn join_indices(targets: &[usize]) -> String {
    targets.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// The DSL line for this instruction.
impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Apply { gate, targets } => write!(f, "apply {gate} {}", join_indices(targets)),
            Instruction::Project { bits, targets } => write!(f, "project {bits} {}", join_indices(targets)),
            Instruction::Expect(k) => write!(f, "expect {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub labels: Option<Vec<String>>,
    pub symbols: SymbolTable,
    pub initial: Ket,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    /// A circuit on `|0…0>` with no instructions.
    pub fn new(n_qubits: usize) -> Result<Self, StateError> {
        Ok(Circuit {
            n_qubits,
            labels: None,
            symbols: SymbolTable::new(),
            initial: Ket::basis(n_qubits, 0)?,
            instructions: Vec::new(),
        })
    }

    pub fn with_state(mut self, initial: Ket) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_symbols(mut self, symbols: SymbolTable) -> Self {
        self.symbols = symbols;
        self
    }

    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Self {
        self.labels = Some(labels.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    pub fn apply(mut self, gate: Gate, targets: &[usize]) -> Self {
        self.instructions.push(Instruction::Apply { gate, targets: targets.to_vec() });
        self
    }

    pub fn project(mut self, bits: &str, targets: &[usize]) -> Self {
        self.instructions.push(Instruction::Project { bits: bits.to_string(), targets: targets.to_vec() });
        self
    }

    pub fn expect(mut self, k: Ket) -> Self {
        self.instructions.push(Instruction::Expect(k));
        self
    }

    /// Executes the circuit. Step 0 is the initial state; every apply and
    /// project adds one step; every expect adds one claim.
    pub fn run(&self) -> Result<Trace, CircuitError> {
        if self.initial.n_qubits() != self.n_qubits {
            return Err(CircuitError::InitialState { expected: self.n_qubits, found: self.initial.n_qubits() });
        }
        let mut state = match &self.labels {
            Some(l) => self.initial.clone().with_labels(l)?,
            None => self.initial.clone(),
        };
        let mut steps = vec![TraceStep { instruction: None, state: state.clone() }];
        let mut claims = Vec::new();
        for ins in &self.instructions {
            match ins {
                Instruction::Apply { gate, targets } => {
                    if targets.len() != gate.arity() {
                        return Err(CircuitError::Arity { gate: *gate, expected: gate.arity(), found: targets.len() });
                    }
                    state = gate.operator().apply_at(&state, targets)?;
                }
                Instruction::Project { bits, targets } => {
                    state = state.project(targets, bits)?;
                }
                Instruction::Expect(expected) => {
                    let after = steps.len() - 1;
                    claims.push(ClaimRecord::compare(
                        format!("expect-{}", claims.len() + 1),
                        format!("step {after}"),
                        expected.clone(),
                        state.clone(),
                    ));
                    continue;
                }
            }
            steps.push(TraceStep { instruction: Some(ins.clone()), state: state.clone() });
        }
        Ok(Trace { steps, claims })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    /// `None` for the initial state.
    pub instruction: Option<Instruction>,
    pub state: Ket,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub claims: Vec<ClaimRecord>,
}

impl Trace {
    pub fn final_state(&self) -> &Ket {
        &self.steps.last().expect("trace always holds the initial state").state
    }

    pub fn initial_state(&self) -> &Ket {
        &self.steps[0].state
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    /// `computed = scalar · expected` with `scalar ∉ {0, 1}`.
    MatchUpToScalar(GaussianRational),
    Mismatch,
}

impl Verdict {
    /// Exact comparison of two kets.
    pub fn of_states(expected: &Ket, computed: &Ket) -> Verdict {
        if expected == computed {
            return Verdict::Match;
        }
        match computed.scalar_ratio(expected) {
            Some(s) if !s.is_zero() => Verdict::MatchUpToScalar(s),
            _ => Verdict::Mismatch,
        }
    }

    pub fn is_mismatch(&self) -> bool {
        matches!(self, Verdict::Mismatch)
    }

    pub fn scalar(&self) -> Option<&GaussianRational> {
        match self {
            Verdict::MatchUpToScalar(s) => Some(s),
            _ => None,
        }
    }

    /// `MATCH`, `MATCH_UP_TO_SCALAR`, `MISMATCH`.
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::MatchUpToScalar(_) => "MATCH_UP_TO_SCALAR",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::MatchUpToScalar(s) => write!(f, "MATCH_UP_TO_SCALAR({s})"),
            v => f.write_str(v.kind()),
        }
    }
}

/// What a claim compares: a state, or a textual classification result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Observed {
    State(Ket),
    Text(String),
}

impl fmt::Display for Observed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observed::State(k) => k.fmt(f),
            Observed::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimRecord {
    pub id: String,
    pub location: String,
    pub expected: Observed,
    pub computed: Observed,
    pub verdict: Verdict,
}

impl ClaimRecord {
    pub fn compare(id: String, location: String, expected: Ket, computed: Ket) -> Self {
        let verdict = Verdict::of_states(&expected, &computed);
        ClaimRecord {
            id,
            location,
            expected: Observed::State(expected),
            computed: Observed::State(computed),
            verdict,
        }
    }

    pub fn compare_text(id: String, location: String, expected: String, computed: String) -> Self {
        let verdict = if expected == computed { Verdict::Match } else { Verdict::Mismatch };
        ClaimRecord {
            id,
            location,
            expected: Observed::Text(expected),
            computed: Observed::Text(computed),
            verdict,
        }
    }

    /// `Eq.(24) B3: MISMATCH (computed -|11>)`.
    pub fn ledger_line(&self) -> String {
        let mut line = format!("{} {}: {}", self.location, self.id, self.verdict);
        if self.verdict.is_mismatch() {
            line.push_str(&format!(" (computed {})", self.computed));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolicAmplitude;

    fn ket(terms: &[(&str, i64)]) -> Ket {
        Ket::from_terms(terms[0].0.len(), terms.iter().map(|(b, c)| (*b, SymbolicAmplitude::integer(*c)))).unwrap()
    }

    #[test]
    fn verdicts() {
        let bell = ket(&[("00", 1), ("11", 1)]);
        assert_eq!(Verdict::of_states(&bell, &bell), Verdict::Match);
        let neg = ket(&[("00", -1), ("11", -1)]);
        assert_eq!(
            Verdict::of_states(&bell, &neg),
            Verdict::MatchUpToScalar(GaussianRational::from_integer(-1))
        );
        assert_eq!(Verdict::of_states(&bell, &ket(&[("11", -1)])), Verdict::Mismatch);
        assert_eq!(Verdict::of_states(&bell, &Ket::zero(2).unwrap()), Verdict::Mismatch);
        assert_eq!(Verdict::MatchUpToScalar(GaussianRational::from_integer(-1)).to_string(), "MATCH_UP_TO_SCALAR(-1)");
    }

    #[test]
    fn empty_circuit_trace() {
        let t = Circuit::new(2).unwrap().run().unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(*t.final_state(), ket(&[("00", 1)]));
        assert!(t.claims.is_empty());
    }

    #[test]
    fn expect_does_not_advance() {
        let c = Circuit::new(2)
            .unwrap()
            .apply(Gate::BigLambda(1), &[0, 1])
            .expect(ket(&[("01", -1), ("10", -1)]))
            .apply(Gate::Star, &[0])
            .apply(Gate::Star, &[1])
            .expect(ket(&[("01", 1), ("10", 1)]));
        let t = c.run().unwrap();
        assert_eq!(t.steps.len(), 4);
        assert_eq!(t.claims.len(), 2);
        assert_eq!(t.claims[0].location, "step 1");
        assert!(t.claims.iter().all(|c| c.verdict == Verdict::Match));
    }

    #[test]
    fn arity_checked_at_run() {
        let c = Circuit::new(2).unwrap().apply(Gate::Cnot, &[0]);
        assert!(matches!(c.run(), Err(CircuitError::Arity { expected: 2, found: 1, .. })));
    }
}
