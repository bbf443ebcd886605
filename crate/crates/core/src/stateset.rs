//! Fixed-width bit sets over the states of a finite model.
//!
//! A [`StateSet`] is always tied to a universe size `n`; bit `i` stands for the
//! `i`-th state in the model's canonical state order. All binary operations
//! require both operands to share the same universe.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        let n_words = universe.div_ceil(WORD);
        StateSet {
            universe,
            words: SmallVec::from_elem(0, n_words),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = StateSet::empty(universe);
        for w in set.words.iter_mut() {
            *w = !0;
        }
        set.trim();
        set
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        let mut set = StateSet::empty(universe);
        set.insert(state);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = StateSet::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "from_mask supports at most 64 states");
        let mut set = StateSet::empty(universe);
        if universe > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Builds a set from raw 64-bit words, low bits first.
    pub fn from_words(universe: usize, words: impl IntoIterator<Item = u64>) -> Self {
        let mut set = StateSet::empty(universe);
        for (slot, w) in set.words.iter_mut().zip(words) {
            *slot = w;
        }
        set.trim();
        set
    }

    /// Number of states in the universe (not the number of members).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.universe
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.universe && self.words[state / WORD] & (1 << (state % WORD)) != 0
    }

    pub fn insert(&mut self, state: usize) {
        assert!(
            state < self.universe,
            "state {state} outside universe of size {}",
            self.universe
        );
        self.words[state / WORD] |= 1 << (state % WORD);
    }

    pub fn remove(&mut self, state: usize) {
        if state < self.universe {
            self.words[state / WORD] &= !(1 << (state % WORD));
        }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + bit)
                }
            })
        })
    }

    fn zip_with(&self, other: &StateSet, f: impl Fn(u64, u64) -> u64) -> StateSet {
        self.check_universe(other);
        StateSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_universe(&self, other: &StateSet) {
        assert_eq!(
            self.universe, other.universe,
            "state sets over different universes"
        );
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
