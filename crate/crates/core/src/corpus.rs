//! The fixed formula corpus used to instantiate schemas in sweeps.
//!
//! Twelve templates over the atoms `p` and `q`, of modal depth at most 2,
//! covering every operator of the expertise language.

use crate::formula::{parse, Formula};

pub const TEMPLATES: [&str; 12] = [
    "p",
    "q",
    "~p",
    "p & q",
    "p -> q",
    "E p",
    "S q",
    "A p",
    "S (p & ~q)",
    "E (p -> q)",
    "S ~S p",
    "E S q",
];

pub const ATOMS: [&str; 2] = ["p", "q"];

pub fn corpus() -> Vec<Formula> {
    TEMPLATES
        .iter()
        .map(|t| parse(t).expect("corpus templates parse"))
        .collect()
}
