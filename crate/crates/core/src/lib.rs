//! The modal logic of expertise and soundness over finite models.
//!
//! - [`formula`]: syntax, parser, printer and the translations into the
//!   knowledge language and the `E`-free fragment.
//! - [`model`]: expertise models, expertise sets and their partitions, and the
//!   induced S5 models.
//! - [`semantics`]: model checking for expertise and relational models.
//! - [`validity`]: exhaustive enumeration of small models, bounded validity
//!   and equivalence checking.
//! - [`proofs`]: the Hilbert calculus: schema matching, tautology checking,
//!   derivation checking and soundness sweeps.

pub mod corpus;
pub mod formula;
pub mod model;
pub mod proofs;
pub mod semantics;
pub mod stateset;
pub mod validity;

pub use formula::{parse, Formula, Modality};
pub use model::{ExpertiseModel, Partition, RelationalModel, SetFamily};
pub use stateset::StateSet;
