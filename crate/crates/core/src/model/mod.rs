//! Finite expertise models.
//!
//! The expertise set of a model is stored as the partition of its states into
//! blocks: a set of states belongs to the expertise set exactly when it is a
//! union of blocks. The set-family view is materialized only on request (see
//! [`expertise_set_from_partition`]).

mod family;
mod io;
mod relational;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::stateset::StateSet;

pub use family::{
    closure, expertise_set_from_partition, partition_from_expertise_set, verify_expertise_set, Law,
    LawViolation, SetFamily,
};
pub use io::ModelFile;
pub use relational::{
    from_s5_model, to_s5_model, RelationProperty, RelationViolation, RelationalModel,
};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("a model needs at least one state")]
    NoStates,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("set over {found} states where {expected} were expected")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("not an expertise set: {}", join_violations(.0))]
    NotExpertiseSet(Vec<LawViolation>),
    #[error("relation is not an equivalence relation: {0}")]
    NotEquivalence(String),
    #[error("model file must contain exactly one of `partition` and `expertise`")]
    PartitionSource,
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
}

fn join_violations(vs: &[LawViolation]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A partition of the states `0..n` into nonempty blocks, kept in canonical
/// order: blocks are ordered by their least state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<StateSet>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates and canonicalizes a list of blocks over `n` states.
    pub fn new(n: usize, blocks: Vec<StateSet>) -> Result<Partition, ModelError> {
        let mut seen = StateSet::empty(n);
        for (i, block) in blocks.iter().enumerate() {
            if block.universe() != n {
                return Err(ModelError::UniverseMismatch {
                    expected: n,
                    found: block.universe(),
                });
            }
            if block.is_empty() {
                return Err(ModelError::InvalidPartition(format!("block {i} is empty")));
            }
            if let Some(s) = seen.intersection(block).first() {
                return Err(ModelError::InvalidPartition(format!(
                    "state #{s} lies in more than one block"
                )));
            }
            seen.union_with(block);
        }
        if let Some(s) = seen.complement().first() {
            return Err(ModelError::InvalidPartition(format!(
                "state #{s} lies in no block"
            )));
        }
        Ok(Partition::from_blocks_unchecked(n, blocks))
    }

    fn from_blocks_unchecked(n: usize, mut blocks: Vec<StateSet>) -> Partition {
        blocks.sort_by_key(|b| b.first());
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for s in b.iter() {
                block_of[s] = i;
            }
        }
        Partition { blocks, block_of }
    }

    /// Builds the partition in which states with equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let n = labels.len();
        let mut by_label: BTreeMap<usize, StateSet> = BTreeMap::new();
        for (s, &l) in labels.iter().enumerate() {
            by_label
                .entry(l)
                .or_insert_with(|| StateSet::empty(n))
                .insert(s);
        }
        Partition::from_blocks_unchecked(n, by_label.into_values().collect())
    }

    /// One block containing every state.
    pub fn coarsest(n: usize) -> Partition {
        Partition::from_labels(&vec![0; n])
    }

    /// Every state in its own block.
    pub fn discrete(n: usize) -> Partition {
        Partition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn n_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[StateSet] {
        &self.blocks
    }

    pub fn block_index(&self, state: usize) -> usize {
        self.block_of[state]
    }

    pub fn block_of(&self, state: usize) -> &StateSet {
        &self.blocks[self.block_of[state]]
    }

    /// Restricted-growth string: the block index of every state.
    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn is_union_of_blocks(&self, set: &StateSet) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_subset(set) || !b.intersects(set))
    }

    /// Union of every block that meets `set`.
    pub fn saturate(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.n_states());
        for b in &self.blocks {
            if b.intersects(set) {
                out.union_with(b);
            }
        }
        out
    }
}

/// An expertise model: states, expertise partition and valuation.
///
/// Atoms missing from the valuation are false everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpertiseModel {
    states: Vec<String>,
    partition: Partition,
    valuation: BTreeMap<String, StateSet>,
}

impl ExpertiseModel {
    pub fn new(
        states: Vec<String>,
        partition: Partition,
        valuation: BTreeMap<String, StateSet>,
    ) -> Result<ExpertiseModel, ModelError> {
        check_states(&states)?;
        let n = states.len();
        if partition.n_states() != n {
            return Err(ModelError::UniverseMismatch {
                expected: n,
                found: partition.n_states(),
            });
        }
        if let Some(bad) = valuation.values().find(|s| s.universe() != n) {
            return Err(ModelError::UniverseMismatch {
                expected: n,
                found: bad.universe(),
            });
        }
        Ok(ExpertiseModel {
            states,
            partition,
            valuation,
        })
    }

    /// Convenience constructor from state names.
    pub fn from_names(
        states: &[&str],
        blocks: &[&[&str]],
        valuation: &[(&str, &[&str])],
    ) -> Result<ExpertiseModel, ModelError> {
        let names: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        check_states(&names)?;
        let blocks = blocks
            .iter()
            .map(|b| set_from_names(&names, b.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        let partition =
            Partition::new(names.len(), blocks).map_err(|e| name_partition_error(e, &names))?;
        let valuation = valuation
            .iter()
            .map(|(atom, members)| {
                Ok((
                    atom.to_string(),
                    set_from_names(&names, members.iter().copied())?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
        ExpertiseModel::new(names, partition, valuation)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Extension of an atom; empty when the valuation does not mention it.
    pub fn atom_extension(&self, atom: &str) -> StateSet {
        self.valuation
            .get(atom)
            .cloned()
            .unwrap_or_else(|| StateSet::empty(self.n_states()))
    }

    /// The expertise set as an explicit family of all unions of blocks.
    pub fn expertise_set(&self) -> SetFamily {
        expertise_set_from_partition(&self.partition)
    }

    pub fn set_names(&self, set: &StateSet) -> Vec<&str> {
        set.iter().map(|i| self.states[i].as_str()).collect()
    }

    /// `{a, c}` style rendering of a state set.
    pub fn format_set(&self, set: &StateSet) -> String {
        format_named_set(&self.states, set)
    }

    pub fn set_from_names<'a, I: IntoIterator<Item = &'a str>>(
        &self,
        names: I,
    ) -> Result<StateSet, ModelError> {
        set_from_names(&self.states, names)
    }
}

impl fmt::Display for ExpertiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.states.join(", "))?;
        let blocks: Vec<String> = self
            .partition
            .blocks()
            .iter()
            .map(|b| self.format_set(b))
            .collect();
        writeln!(f, "blocks: {}", blocks.join(" "))?;
        for (atom, set) in &self.valuation {
            writeln!(f, "v({atom}) = {}", self.format_set(set))?;
        }
        Ok(())
    }
}

pub(crate) fn check_states(states: &[String]) -> Result<(), ModelError> {
    if states.is_empty() {
        return Err(ModelError::NoStates);
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(ModelError::DuplicateState(s.clone()));
        }
    }
    Ok(())
}

pub(crate) fn set_from_names<'a, I: IntoIterator<Item = &'a str>>(
    states: &[String],
    names: I,
) -> Result<StateSet, ModelError> {
    let mut set = StateSet::empty(states.len());
    for name in names {
        let i = states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ModelError::UnknownState(name.to_string()))?;
        set.insert(i);
    }
    Ok(set)
}

pub(crate) fn format_named_set(states: &[String], set: &StateSet) -> String {
    let names: Vec<&str> = set.iter().map(|i| states[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Replaces `#i` state references in partition errors with state names.
pub(crate) fn name_partition_error(e: ModelError, states: &[String]) -> ModelError {
    match e {
        ModelError::InvalidPartition(msg) => {
            let mut out = msg;
            for (i, name) in states.iter().enumerate().rev() {
                out = out.replace(&format!("#{i}"), &format!("`{name}`"));
            }
            ModelError::InvalidPartition(out)
        }
        other => other,
    }
}
