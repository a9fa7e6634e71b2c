//! The derived gate set. Every gate is a recipe over the generators
//! `{I, *, ↑, ↓}`; nothing here hard-codes an action table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::operator::{OpExpr, Operator, OperatorError};

fn compose2(a: OpExpr, b: OpExpr) -> OpExpr {
    OpExpr::product([a, b])
}

fn tensor2(a: OpExpr, b: OpExpr) -> OpExpr {
    OpExpr::tensor([a, b])
}

/// One-qubit `λ_k`:
/// `λ1 = *↑ + ↑*`, `λ2 = *↓ + ↓*`, `λ3 = *↓ + ↑*`, `λ4 = *↑ + ↓*`.
pub fn lambda_expr(k: usize) -> Result<OpExpr, OperatorError> {
    use OpExpr as E;
    let (first, second) = match k {
        1 => (E::raise(), E::raise()),
        2 => (E::lower(), E::lower()),
        3 => (E::lower(), E::raise()),
        4 => (E::raise(), E::lower()),
        _ => return Err(OperatorError::NoSuchIndex(k)),
    };
    Ok(OpExpr::sum([compose2(E::star(), first), compose2(second, E::star())]))
}

/// Two-qubit `Λ_k`:
/// `Λ1 = *⊗↑ + ↑⊗*`, `Λ2 = *⊗↓ + ↓⊗*`, `Λ3 = *⊗↑ + ↓⊗*`, `Λ4 = *⊗↓ + ↑⊗*`.
pub fn big_lambda_expr(k: usize) -> Result<OpExpr, OperatorError> {
    use OpExpr as E;
    let (first, second) = match k {
        1 => (E::raise(), E::raise()),
        2 => (E::lower(), E::lower()),
        3 => (E::raise(), E::lower()),
        4 => (E::lower(), E::raise()),
        _ => return Err(OperatorError::NoSuchIndex(k)),
    };
    Ok(OpExpr::sum([tensor2(E::star(), first), tensor2(second, E::star())]))
}

pub fn lambda_op(k: usize) -> Result<Operator, OperatorError> {
    lambda_expr(k)?.eval()
}

pub fn big_lambda_op(k: usize) -> Result<Operator, OperatorError> {
    big_lambda_expr(k)?.eval()
}

fn lambda(k: usize) -> OpExpr {
    lambda_expr(k).expect("index in 1..=4")
}

/// `H₊ = I + *λ4`: `|0> → |0>+|1>`, `|1> → |1>-|0>`. Unnormalized.
pub fn hadamard_plus_expr() -> OpExpr {
    OpExpr::sum([OpExpr::id(), compose2(OpExpr::star(), lambda(4))])
}

/// `H₋ = λ4(I + *λ4)`: `|0> → |0>+|1>`, `|1> → |0>-|1>`.
pub fn hadamard_minus_expr() -> OpExpr {
    compose2(lambda(4), hadamard_plus_expr())
}

pub fn hadamard_plus() -> Operator {
    hadamard_plus_expr().eval().expect("one-qubit recipe")
}

pub fn hadamard_minus() -> Operator {
    hadamard_minus_expr().eval().expect("one-qubit recipe")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma2 {
    /// `λ4∘*`: `|0> → -|1>`, `|1> → |0>`.
    A,
    /// `λ3∘*`: `|0> → |1>`, `|1> → -|0>`.
    B,
}

pub fn sigma2_expr(variant: Sigma2) -> OpExpr {
    let k = match variant {
        Sigma2::A => 4,
        Sigma2::B => 3,
    };
    compose2(lambda(k), OpExpr::star())
}

pub fn sigma2_gate(variant: Sigma2) -> Operator {
    sigma2_expr(variant).eval().expect("one-qubit recipe")
}

/// `CNOT = P0⊗I + P1⊗λ4`, control on qubit 0.
///
/// On each control sector this is `(I⊗λ4)^i`, which is how the sector-indexed
/// form `U(i)` is read.
pub fn cnot_expr() -> OpExpr {
    OpExpr::sum([
        tensor2(OpExpr::Projector(false), OpExpr::id()),
        tensor2(OpExpr::Projector(true), lambda(4)),
    ])
}

pub fn cnot() -> Operator {
    cnot_expr().eval().expect("two-qubit recipe")
}

/// Gates addressable by name from the circuit language and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Star,
    Raise,
    Lower,
    Lambda(u8),
    BigLambda(u8),
    Not,
    HPlus,
    HMinus,
    Sig2A,
    Sig2B,
    Cnot,
}

impl Gate {
    pub const ALL: [Gate; 17] = [
        Gate::Star,
        Gate::Raise,
        Gate::Lower,
        Gate::Lambda(1),
        Gate::Lambda(2),
        Gate::Lambda(3),
        Gate::Lambda(4),
        Gate::BigLambda(1),
        Gate::BigLambda(2),
        Gate::BigLambda(3),
        Gate::BigLambda(4),
        Gate::Not,
        Gate::HPlus,
        Gate::HMinus,
        Gate::Sig2A,
        Gate::Sig2B,
        Gate::Cnot,
    ];

    pub fn name(self) -> String {
        match self {
            Gate::Star => "STAR".into(),
            Gate::Raise => "RAISE".into(),
            Gate::Lower => "LOWER".into(),
            Gate::Lambda(k) => format!("L{k}"),
            Gate::BigLambda(k) => format!("LL{k}"),
            Gate::Not => "NOT".into(),
            Gate::HPlus => "HPLUS".into(),
            Gate::HMinus => "HMINUS".into(),
            Gate::Sig2A => "SIG2A".into(),
            Gate::Sig2B => "SIG2B".into(),
            Gate::Cnot => "CNOT".into(),
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Gate::BigLambda(_) | Gate::Cnot => 2,
            _ => 1,
        }
    }

    pub fn recipe(self) -> OpExpr {
        match self {
            Gate::Star => OpExpr::star(),
            Gate::Raise => OpExpr::raise(),
            Gate::Lower => OpExpr::lower(),
            Gate::Lambda(k) => lambda(k.into()),
            Gate::BigLambda(k) => big_lambda_expr(k.into()).expect("index in 1..=4"),
            Gate::Not => lambda(4),
            Gate::HPlus => hadamard_plus_expr(),
            Gate::HMinus => hadamard_minus_expr(),
            Gate::Sig2A => sigma2_expr(Sigma2::A),
            Gate::Sig2B => sigma2_expr(Sigma2::B),
            Gate::Cnot => cnot_expr(),
        }
    }

    /// The evaluated matrix, computed once per process.
    pub fn operator(self) -> &'static Operator {
        static REGISTRY: OnceLock<BTreeMap<Gate, Operator>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| {
            Gate::ALL
                .iter()
                .map(|g| (*g, g.recipe().eval().expect("registered recipes are well formed")))
                .collect()
        });
        &registry[&self]
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown gate '{0}'")]
pub struct UnknownGate(pub String);

impl FromStr for Gate {
    type Err = UnknownGate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gate::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| UnknownGate(s.to_string()))
    }
}
