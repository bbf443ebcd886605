//! The Hilbert calculus for expertise and soundness.
//!
//! The propositional base is a tautology rule over the propositional
//! abstraction of a formula. On top of it sit eight axiom schemas and three
//! rules: modus ponens, necessitation for `A`, and congruence for `S`.

mod derivation;
mod file;
mod schema;
mod sweep;
mod taut;

use thiserror::Error;

use crate::formula::Formula;

pub use derivation::{
    check_derivation, Derivation, DerivationBuilder, DerivationError, Justification, Step,
    StepFault,
};
pub use file::{parse_proof, ProofFileError};
pub use schema::{match_schema, Axiom, MetaVar, Schema, Substitution, UnknownAxiom};
pub use sweep::{
    describe_substitution, instances, soundness_sweep, Instance, SweepReport, SweepViolation,
};
pub use taut::{check_taut, MAX_LETTERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("{letters} propositional letters exceed the truth-table cap of {max}")]
    TooManyLetters { letters: usize, max: usize },
    #[error("not a tautology: {0}")]
    NotTautology(Formula),
}
