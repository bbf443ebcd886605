//! Expertise sets as explicit set families, and the correspondence with
//! partitions.

use std::collections::HashSet;
use std::fmt;

use crate::stateset::StateSet;

use super::{ModelError, Partition};

/// Closure law of an expertise set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// Contains the whole state space.
    P1,
    /// Closed under complement.
    P2,
    /// Closed under intersection.
    P3,
}

/// A failed law together with the set that should have been present and the
/// member(s) it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub missing: StateSet,
    pub from: Vec<StateSet>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.law {
            Law::P1 => write!(f, "P1: the full set {:?} is missing", self.missing),
            Law::P2 => write!(
                f,
                "P2: complement {:?} of {:?} is missing",
                self.missing, self.from[0]
            ),
            Law::P3 => write!(
                f,
                "P3: intersection {:?} of {:?} and {:?} is missing",
                self.missing, self.from[0], self.from[1]
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<StateSet>,
}

impl SetFamily {
    pub fn new(sets: Vec<StateSet>) -> SetFamily {
        SetFamily { sets }
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.sets.contains(set)
    }

    /// Equality as sets of sets, ignoring order and repetition.
    pub fn same_members(&self, other: &SetFamily) -> bool {
        let a: HashSet<&StateSet> = self.sets.iter().collect();
        let b: HashSet<&StateSet> = other.sets.iter().collect();
        a == b
    }

    fn check_universe(&self, n: usize) -> Result<(), ModelError> {
        match self.sets.iter().find(|s| s.universe() != n) {
            Some(bad) => Err(ModelError::UniverseMismatch {
                expected: n,
                found: bad.universe(),
            }),
            None => Ok(()),
        }
    }
}

/// Checks P1, P2 and P3 over `n` states. An empty result means the family is
/// an expertise set. Over a finite state space, closure under pairwise
/// intersection is equivalent to closure under arbitrary intersection.
pub fn verify_expertise_set(family: &SetFamily, n: usize) -> Result<Vec<LawViolation>, ModelError> {
    family.check_universe(n)?;
    let members: HashSet<&StateSet> = family.sets.iter().collect();
    let mut violations = Vec::new();
    let mut reported: HashSet<(Law, StateSet)> = HashSet::new();
    let mut report = |law: Law, missing: StateSet, from: Vec<StateSet>| {
        if reported.insert((law, missing.clone())) {
            violations.push(LawViolation { law, missing, from });
        }
    };

    let full = StateSet::full(n);
    if !members.contains(&full) {
        report(Law::P1, full, Vec::new());
    }
    for a in &family.sets {
        let c = a.complement();
        if !members.contains(&c) {
            report(Law::P2, c, vec![a.clone()]);
        }
    }
    for (i, a) in family.sets.iter().enumerate() {
        for b in &family.sets[i + 1..] {
            let m = a.intersection(b);
            if !members.contains(&m) {
                report(Law::P3, m, vec![a.clone(), b.clone()]);
            }
        }
    }
    Ok(violations)
}

/// Recovers the blocks of an expertise set: the block of `x` is the
/// intersection of all members containing `x`.
pub fn partition_from_expertise_set(family: &SetFamily, n: usize) -> Result<Partition, ModelError> {
    let violations = verify_expertise_set(family, n)?;
    if !violations.is_empty() {
        return Err(ModelError::NotExpertiseSet(violations));
    }
    let mut blocks: Vec<StateSet> = Vec::new();
    for x in 0..n {
        let mut smallest = StateSet::full(n);
        for a in family.sets.iter().filter(|a| a.contains(x)) {
            smallest.intersect_with(a);
        }
        if !blocks.contains(&smallest) {
            blocks.push(smallest);
        }
    }
    Partition::new(n, blocks)
}

/// All unions of blocks. The `i`-th union contains block `j` iff bit `j` of
/// `i` is set, so the empty set comes first and the full set last.
pub fn expertise_set_from_partition(partition: &Partition) -> SetFamily {
    let n = partition.n_states();
    let blocks = partition.blocks();
    assert!(
        blocks.len() < usize::BITS as usize,
        "too many blocks to materialize the expertise set"
    );
    let sets = (0..1usize << blocks.len())
        .map(|mask| {
            let mut set = StateSet::empty(n);
            for (j, b) in blocks.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    set.union_with(b);
                }
            }
            set
        })
        .collect();
    SetFamily::new(sets)
}

/// The partition of the smallest expertise set containing `family`: two
/// states share a block iff no member of the family separates them.
pub fn closure(family: &SetFamily, n: usize) -> Result<Partition, ModelError> {
    family.check_universe(n)?;
    let mut blocks = if n == 0 {
        Vec::new()
    } else {
        vec![StateSet::full(n)]
    };
    for a in &family.sets {
        blocks = blocks
            .into_iter()
            .flat_map(|b| [b.intersection(a), b.difference(a)])
            .filter(|b| !b.is_empty())
            .collect();
    }
    Partition::new(n, blocks)
}
