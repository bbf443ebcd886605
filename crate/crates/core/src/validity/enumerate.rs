//! Enumeration of all expertise models with a fixed number of states.
//!
//! Order: partitions in restricted-growth-string order (lexicographic on the
//! block labels, so the single-block partition comes first and the discrete
//! partition last); for each partition, valuations in binary-counter order.
//! In valuation number `c`, atom `i` holds at state `s` iff bit `i * n + s` of
//! `c` is set.

use std::collections::BTreeMap;

use crate::model::{ExpertiseModel, Partition};
use crate::stateset::StateSet;

use super::SearchError;

/// Bell numbers: the number of partitions of an `n`-element set.
pub fn bell(n: usize) -> u128 {
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("nonempty row"));
        for &x in &row {
            let last = *next.last().expect("nonempty row");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Restricted-growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    current: Option<Vec<usize>>,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> RestrictedGrowth {
        RestrictedGrowth {
            current: Some(vec![0; n]),
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut a = out.clone();
        // prefix_max[i] = max(a[0..i])
        let mut prefix_max = vec![0; a.len()];
        for i in 1..a.len() {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        for i in (1..a.len()).rev() {
            if a[i] <= prefix_max[i] {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
                self.current = Some(a);
                break;
            }
        }
        Some(out)
    }
}

/// All partitions of `n` states in enumeration order.
pub fn partitions(n: usize) -> Vec<Partition> {
    RestrictedGrowth::new(n)
        .map(|labels| Partition::from_labels(&labels))
        .collect()
}

/// Search space description: every model with `n_states` states whose
/// valuation ranges over `atoms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n_states: usize,
    pub atoms: Vec<String>,
    /// Maximum number of models to visit.
    pub limit: Option<u64>,
}

impl EnumerationSpec {
    pub fn new<S: Into<String>>(
        n_states: usize,
        atoms: impl IntoIterator<Item = S>,
    ) -> Result<EnumerationSpec, SearchError> {
        let spec = EnumerationSpec {
            n_states,
            atoms: atoms.into_iter().map(Into::into).collect(),
            limit: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_limit(mut self, limit: u64) -> EnumerationSpec {
        self.limit = Some(limit);
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n_states == 0 {
            return Err(SearchError::NoStates);
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if self.atoms[..i].contains(a) {
                return Err(SearchError::DuplicateAtom(a.clone()));
            }
        }
        if self.n_states * self.atoms.len() > 62 || self.n_states > 20 {
            return Err(SearchError::SpaceTooLarge {
                n_states: self.n_states,
                n_atoms: self.atoms.len(),
            });
        }
        Ok(())
    }

    /// Models with exactly `n_states` states.
    pub fn model_count(&self) -> u128 {
        count_models(self.n_states, self.atoms.len())
    }

    /// Models with between one and `n_states` states.
    pub fn cumulative_model_count(&self) -> u128 {
        (1..=self.n_states)
            .map(|m| count_models(m, self.atoms.len()))
            .sum()
    }
}

pub(crate) fn count_models(n: usize, k: usize) -> u128 {
    bell(n) << (n * k)
}

pub(crate) fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub(crate) fn build_model(
    names: &[String],
    partition: &Partition,
    atoms: &[String],
    counter: u64,
) -> ExpertiseModel {
    let n = names.len();
    let mask = (1u64 << n) - 1;
    let valuation: BTreeMap<String, StateSet> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            (
                a.clone(),
                StateSet::from_mask(n, (counter >> (i * n)) & mask),
            )
        })
        .collect();
    ExpertiseModel::new(names.to_vec(), partition.clone(), valuation)
        .expect("enumerated models are well formed")
}

/// Stream of all models described by a spec, in enumeration order.
pub struct ModelStream {
    names: Vec<String>,
    atoms: Vec<String>,
    partitions: Vec<Partition>,
    partition_index: usize,
    counter: u64,
    n_valuations: u64,
    emitted: u64,
    limit: Option<u64>,
    truncated: bool,
}

impl ModelStream {
    /// Set once the stream stopped early because of the model limit.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }
}

impl Iterator for ModelStream {
    type Item = ExpertiseModel;

    fn next(&mut self) -> Option<ExpertiseModel> {
        if self.partition_index >= self.partitions.len() {
            return None;
        }
        if self.limit.is_some_and(|l| self.emitted >= l) {
            self.truncated = true;
            return None;
        }
        let model = build_model(
            &self.names,
            &self.partitions[self.partition_index],
            &self.atoms,
            self.counter,
        );
        self.emitted += 1;
        self.counter += 1;
        if self.counter == self.n_valuations {
            self.counter = 0;
            self.partition_index += 1;
        }
        Some(model)
    }
}

pub fn enumerate_models(spec: &EnumerationSpec) -> Result<ModelStream, SearchError> {
    spec.validate()?;
    Ok(ModelStream {
        names: state_names(spec.n_states),
        atoms: spec.atoms.clone(),
        partitions: partitions(spec.n_states),
        partition_index: 0,
        counter: 0,
        n_valuations: 1u64 << (spec.n_states * spec.atoms.len()),
        emitted: 0,
        limit: spec.limit,
        truncated: false,
    })
}
