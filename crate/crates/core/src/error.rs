//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while building or checking a structure.
///
/// Mathematical *failures* (a condition that does not hold) are generally
/// reported through report types with witnesses; variants here are reserved
/// for operations whose contract is violated.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("half power of the deformation parameter needs a field extension for even order {0}")]
    EvenOrderNeedsExtension(u32),

    #[error("scalars from different fields: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("generator sets differ: {0} vs {1}")]
    GenSetMismatch(String, String),

    #[error("ambient degrees differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),

    #[error("relation space is not a submodule: {hopf_gen} sends {label} to a residue {residue}")]
    NotSubmodule {
        hopf_gen: String,
        label: String,
        residue: String,
    },

    #[error("{elem} is not an eigenvector of the designated grouplike")]
    NotKEigenvector { elem: String },

    #[error("reduction system not associative: triple ({z}, {y}, {x}) resolves two ways:\n  {left}\n  {right}")]
    AssociativityFailure {
        z: String,
        y: String,
        x: String,
        left: String,
        right: String,
    },

    #[error("twist is not a module map: {hopf_gen} on {pair} gives {lhs} vs {rhs}")]
    NotModuleMap {
        hopf_gen: String,
        pair: String,
        lhs: String,
        rhs: String,
    },

    #[error("degree bound {0} exceeded")]
    BoundExceeded(usize),

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("matrix for {0} is not invertible, but grouplikes must act invertibly")]
    NotInvertible(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("this operation needs a finite normal-word basis; {0} has none")]
    FiniteBasisRequired(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("relations do not match the documented list: {0}")]
    RelationMismatch(String),
}
