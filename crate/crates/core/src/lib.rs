//! Exact simulation and verification of the black-hole/qubit operator
//! algebra: Hodge-star and bit-flipper gates, symbolic circuit execution,
//! a ledger of the published identities, and SLOCC classification with
//! the black-hole reading of each class.

pub mod circuit;
pub mod cli;
pub mod classify;
pub mod gates;
pub mod ket;
pub mod linalg;
pub mod operator;
pub mod par;
pub mod scalar;
pub mod symbolic;
pub mod syntax;

pub use gates::Gate;
pub use ket::Ket;
pub use operator::{OpExpr, Operator};
pub use scalar::GaussianRational;
pub use symbolic::{Symbol, SymbolTable, SymbolicAmplitude};
