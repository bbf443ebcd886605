use std::collections::BTreeMap;
use std::fmt;

use crate::stateset::StateSet;

use super::{check_states, ExpertiseModel, ModelError, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationProperty {
    Reflexive,
    Symmetric,
    Transitive,
}

impl fmt::Display for RelationProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationProperty::Reflexive => "reflexive",
            RelationProperty::Symmetric => "symmetric",
            RelationProperty::Transitive => "transitive",
        })
    }
}

/// First failure of an equivalence-relation law, in state order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationViolation {
    /// `(x, x)` is missing.
    NotReflexive { state: usize },
    /// `(x, y)` is present but `(y, x)` is not.
    NotSymmetric { from: usize, to: usize },
    /// `(x, y)` and `(y, z)` are present but `(x, z)` is not.
    NotTransitive { from: usize, via: usize, to: usize },
}

impl RelationViolation {
    pub fn property(&self) -> RelationProperty {
        match self {
            RelationViolation::NotReflexive { .. } => RelationProperty::Reflexive,
            RelationViolation::NotSymmetric { .. } => RelationProperty::Symmetric,
            RelationViolation::NotTransitive { .. } => RelationProperty::Transitive,
        }
    }

    pub fn describe(&self, states: &[String]) -> String {
        match *self {
            RelationViolation::NotReflexive { state } => {
                format!("not reflexive at {}", states[state])
            }
            RelationViolation::NotSymmetric { from, to } => format!(
                "not symmetric: ({}, {}) without ({}, {})",
                states[from], states[to], states[to], states[from]
            ),
            RelationViolation::NotTransitive { from, via, to } => format!(
                "not transitive: ({}, {}) and ({}, {}) without ({}, {})",
                states[from], states[via], states[via], states[to], states[from], states[to]
            ),
        }
    }
}

/// A Kripke model with one accessibility relation, stored as successor sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalModel {
    states: Vec<String>,
    successors: Vec<StateSet>,
    valuation: BTreeMap<String, StateSet>,
}

impl RelationalModel {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(
        states: Vec<String>,
        pairs: I,
        valuation: BTreeMap<String, StateSet>,
    ) -> Result<RelationalModel, ModelError> {
        check_states(&states)?;
        let n = states.len();
        let mut successors = vec![StateSet::empty(n); n];
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(ModelError::UnknownState(format!("#{}", x.max(y))));
            }
            successors[x].insert(y);
        }
        if let Some(bad) = valuation.values().find(|s| s.universe() != n) {
            return Err(ModelError::UniverseMismatch {
                expected: n,
                found: bad.universe(),
            });
        }
        Ok(RelationalModel {
            states,
            successors,
            valuation,
        })
    }

    pub fn from_names(
        states: &[&str],
        pairs: &[(&str, &str)],
        valuation: &[(&str, &[&str])],
    ) -> Result<RelationalModel, ModelError> {
        let names: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        check_states(&names)?;
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| ModelError::UnknownState(s.to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|&(x, y)| Ok((index(x)?, index(y)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        let valuation = valuation
            .iter()
            .map(|(atom, members)| {
                Ok((
                    atom.to_string(),
                    super::set_from_names(&names, members.iter().copied())?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
        RelationalModel::new(names, pairs, valuation)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn successors(&self, state: usize) -> &StateSet {
        &self.successors[state]
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    pub fn atom_extension(&self, atom: &str) -> StateSet {
        self.valuation
            .get(atom)
            .cloned()
            .unwrap_or_else(|| StateSet::empty(self.n_states()))
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.successors[x].contains(y)
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(x, succ)| succ.iter().map(move |y| (x, y)))
            .collect()
    }

    /// First violated equivalence law, checking reflexivity, then symmetry,
    /// then transitivity.
    pub fn equivalence_violation(&self) -> Option<RelationViolation> {
        let n = self.n_states();
        if let Some(state) = (0..n).find(|&x| !self.related(x, x)) {
            return Some(RelationViolation::NotReflexive { state });
        }
        for (x, y) in self.pairs() {
            if !self.related(y, x) {
                return Some(RelationViolation::NotSymmetric { from: x, to: y });
            }
        }
        for (x, y) in self.pairs() {
            if let Some(z) = self.successors[y].difference(&self.successors[x]).first() {
                return Some(RelationViolation::NotTransitive {
                    from: x,
                    via: y,
                    to: z,
                });
            }
        }
        None
    }

    pub fn is_s5(&self) -> bool {
        self.equivalence_violation().is_none()
    }
}

/// The induced S5 model: states are related iff they share a block.
pub fn to_s5_model(model: &ExpertiseModel) -> RelationalModel {
    let partition = model.partition();
    let successors = (0..model.n_states())
        .map(|x| partition.block_of(x).clone())
        .collect();
    RelationalModel {
        states: model.states().to_vec(),
        successors,
        valuation: model.valuation().clone(),
    }
}

/// The expertise model whose induced S5 model is `model`.
pub fn from_s5_model(model: &RelationalModel) -> Result<ExpertiseModel, ModelError> {
    if let Some(v) = model.equivalence_violation() {
        return Err(ModelError::NotEquivalence(v.describe(model.states())));
    }
    let mut blocks: Vec<StateSet> = Vec::new();
    for succ in &model.successors {
        if !blocks.contains(succ) {
            blocks.push(succ.clone());
        }
    }
    let partition = Partition::new(model.n_states(), blocks)?;
    ExpertiseModel::new(model.states.clone(), partition, model.valuation.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn economist() -> ExpertiseModel {
        ExpertiseModel::from_names(
            &["a", "b", "c", "d"],
            &[&["a", "c"], &["b", "d"]],
            &[("r", &["a", "c"]), ("p", &["a", "b"])],
        )
        .unwrap()
    }

    fn named_pairs(m: &RelationalModel) -> Vec<String> {
        m.pairs()
            .into_iter()
            .map(|(x, y)| format!("{}{}", m.states()[x], m.states()[y]))
            .collect()
    }

    #[test]
    fn induced_relation_of_economist_model() {
        let s5 = to_s5_model(&economist());
        let mut pairs = named_pairs(&s5);
        pairs.sort();
        let mut expected = vec!["aa", "ac", "ca", "cc", "bb", "bd", "db", "dd"];
        expected.sort();
        assert_eq!(pairs, expected);
        assert!(s5.is_s5());
        assert_eq!(from_s5_model(&s5).unwrap(), economist());
    }

    #[test]
    fn extreme_partitions() {
        let single = ExpertiseModel::new(
            vec!["a".into(), "b".into(), "c".into()],
            Partition::coarsest(3),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(to_s5_model(&single).pairs().len(), 9);
        let discrete = ExpertiseModel::new(
            vec!["a".into(), "b".into(), "c".into()],
            Partition::discrete(3),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(to_s5_model(&discrete).pairs(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn from_identity_and_total() {
        let id = RelationalModel::from_names(&["a", "b"], &[("a", "a"), ("b", "b")], &[]).unwrap();
        assert_eq!(
            from_s5_model(&id).unwrap().partition(),
            &Partition::discrete(2)
        );
        let all: Vec<(&str, &str)> = ["a", "b", "c"]
            .iter()
            .flat_map(|&x| ["a", "b", "c"].map(move |y| (x, y)))
            .collect();
        let total = RelationalModel::from_names(&["a", "b", "c"], &all, &[]).unwrap();
        assert_eq!(
            from_s5_model(&total).unwrap().partition(),
            &Partition::coarsest(3)
        );
    }

    #[test]
    fn rejects_non_equivalences() {
        let r = RelationalModel::from_names(&["a", "b"], &[("a", "a")], &[]).unwrap();
        assert_eq!(
            r.equivalence_violation(),
            Some(RelationViolation::NotReflexive { state: 1 })
        );
        let err = from_s5_model(&r).unwrap_err().to_string();
        assert!(err.contains("not reflexive at b"), "{err}");

        let r =
            RelationalModel::from_names(&["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")], &[])
                .unwrap();
        assert_eq!(
            r.equivalence_violation().unwrap().property(),
            RelationProperty::Symmetric
        );

        let r = RelationalModel::from_names(
            &["a", "b", "c"],
            &[
                ("a", "a"),
                ("b", "b"),
                ("c", "c"),
                ("a", "b"),
                ("b", "a"),
                ("b", "c"),
                ("c", "b"),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(
            r.equivalence_violation(),
            Some(RelationViolation::NotTransitive {
                from: 0,
                via: 1,
                to: 2
            })
        );
    }
}
