//! The published circuits, built from named gates. Qubit indices are
//! zero-based; prose such as "the third qubit" maps to index 2.

use super::Circuit;
use crate::gates::Gate;
use crate::ket::Ket;
use crate::symbolic::SymbolTable;
use crate::syntax::parse_ket;

pub(crate) fn ket(text: &str) -> Ket {
    ket_with(text, &SymbolTable::new())
}

pub(crate) fn ket_with(text: &str, symbols: &SymbolTable) -> Ket {
    parse_ket(text, symbols, None).unwrap_or_else(|e| panic!("bad built-in ket '{text}': {e}"))
}

pub(crate) fn teleport_symbols() -> SymbolTable {
    SymbolTable::with_names(&["alpha", "beta"]).expect("valid names")
}

/// Printed Bell states `B1..B4`.
pub const BELL_STATES: [&str; 4] = ["|01> + |10>", "|01> - |10>", "|00> - |11>", "|00> + |11>"];

/// The whole Bell chain run sequentially from `|00>`: `(*⊗*)Λ1`, `I⊗*`,
/// `I⊗↑`, `I⊗λ4λ3`, each followed by the printed state.
pub fn bell_chain() -> Circuit {
    Circuit::new(2)
        .expect("two qubits")
        .apply(Gate::BigLambda(1), &[0, 1])
        .apply(Gate::Star, &[0])
        .apply(Gate::Star, &[1])
        .expect(ket(BELL_STATES[0]))
        .apply(Gate::Star, &[1])
        .expect(ket(BELL_STATES[1]))
        .apply(Gate::Raise, &[1])
        .expect(ket(BELL_STATES[2]))
        .apply(Gate::Lambda(3), &[1])
        .apply(Gate::Lambda(4), &[1])
        .expect(ket(BELL_STATES[3]))
}

/// One Bell-chain step, started from the printed predecessor state.
#[derive(Debug, Clone)]
pub struct BellStage {
    pub id: &'static str,
    pub location: &'static str,
    pub circuit: Circuit,
}

/// The Bell chain as independent stages. The last step appears twice: with
/// the `I⊗*` named in the prose and with the printed `I⊗λ4λ3`.
pub fn bell_stages() -> Vec<BellStage> {
    let from = |input: &str| Circuit::new(2).expect("two qubits").with_state(ket(input));
    vec![
        BellStage {
            id: "B1",
            location: "Eq.(22)",
            circuit: from("|00>")
                .apply(Gate::BigLambda(1), &[0, 1])
                .apply(Gate::Star, &[0])
                .apply(Gate::Star, &[1])
                .expect(ket(BELL_STATES[0])),
        },
        BellStage {
            id: "B2",
            location: "Eq.(23)",
            circuit: from(BELL_STATES[0]).apply(Gate::Star, &[1]).expect(ket(BELL_STATES[1])),
        },
        BellStage {
            id: "B3",
            location: "Eq.(24)",
            circuit: from(BELL_STATES[1]).apply(Gate::Raise, &[1]).expect(ket(BELL_STATES[2])),
        },
        BellStage {
            id: "B4-text",
            location: "Eq.(25)",
            circuit: from(BELL_STATES[2]).apply(Gate::Star, &[1]).expect(ket(BELL_STATES[3])),
        },
        BellStage {
            id: "B4",
            location: "Eq.(25)",
            circuit: from(BELL_STATES[2])
                .apply(Gate::Lambda(3), &[1])
                .apply(Gate::Lambda(4), &[1])
                .expect(ket(BELL_STATES[3])),
        },
    ]
}

pub const TELEPORT_INPUT: &str = "(alpha)|000> + (alpha)|011> + (beta)|100> + (beta)|111>";
pub const TELEPORT_AFTER_CNOT: &str = "(alpha)|000> + (alpha)|011> + (beta)|101> + (beta)|110>";
pub const TELEPORT_AFTER_HPLUS: &str = "(alpha)|000> + (alpha)|011> + (alpha)|100> + (alpha)|111> \
     - (beta)|001> - (beta)|010> + (beta)|101> + (beta)|110>";
pub const TELEPORT_AFTER_NOT: &str = "(alpha)|000> + (alpha)|011> + (alpha)|100> + (alpha)|111> \
     + (beta)|001> + (beta)|010> - (beta)|101> - (beta)|110>";
pub const TELEPORT_OUTPUT: &str = "(alpha)|000> + (beta)|001>";

/// `(α|0>+β|1>)_a ⊗ (|00>+|11>)_{b1 b2}` through CNOT(a→b1), H₊(a), NOT(a)
/// and post-selection of `|00>` on `a b1`.
pub fn teleport_circuit() -> Circuit {
    let symbols = teleport_symbols();
    let k = |t: &str| ket_with(t, &symbols);
    Circuit::new(3)
        .expect("three qubits")
        .with_labels(&["a", "b1", "b2"])
        .with_state(k(TELEPORT_INPUT))
        .apply(Gate::Cnot, &[0, 1])
        .expect(k(TELEPORT_AFTER_CNOT))
        .apply(Gate::HPlus, &[0])
        .expect(k(TELEPORT_AFTER_HPLUS))
        .apply(Gate::Not, &[0])
        .expect(k(TELEPORT_AFTER_NOT))
        .project("00", &[0, 1])
        .expect(k(TELEPORT_OUTPUT))
        .with_symbols(symbols)
}

/// Which Bell qubit controls the GHZ CNOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhzControl {
    A1,
    A2,
}

impl GhzControl {
    pub fn qubit(self) -> usize {
        match self {
            GhzControl::A1 => 0,
            GhzControl::A2 => 1,
        }
    }
}

pub const GHZ_INPUT: &str = "|000> + |110>";
pub const GHZ_OUTPUT: &str = "|000> + |111>";

/// CNOT(a_k → b) on `(|00>+|11>)_{a1 a2} ⊗ |0>_b`.
pub fn ghz_circuit(control: GhzControl) -> Circuit {
    Circuit::new(3)
        .expect("three qubits")
        .with_labels(&["a1", "a2", "b"])
        .with_state(ket(GHZ_INPUT))
        .apply(Gate::Cnot, &[control.qubit(), 2])
        .expect(ket(GHZ_OUTPUT))
}

pub const CLASS_CHANGE_STEP1: &str = "|000> + |001>";
/// The printed endpoint of the interchange chain.
pub const CLASS_CHANGE_PRINTED: &str = "|101> + |110>";

/// H₊ on the third qubit, then CNOT with the third qubit as control and the
/// second as target, on `|000>`.
pub fn class_change_circuit() -> Circuit {
    Circuit::new(3)
        .expect("three qubits")
        .apply(Gate::HPlus, &[2])
        .expect(ket(CLASS_CHANGE_STEP1))
        .apply(Gate::Cnot, &[2, 1])
        .expect(ket(CLASS_CHANGE_PRINTED))
}
