//! Propositional tautology checking with modal subformulas treated as letters.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::stateset::StateSet;

use super::ProofError;

/// Largest number of propositional letters accepted by [`check_taut`].
pub const MAX_LETTERS: usize = 20;

fn letters<'f>(f: &'f Formula, out: &mut HashMap<&'f Formula, usize>) {
    match f {
        Formula::Atom(_) | Formula::Modal(..) => {
            let next = out.len();
            out.entry(f).or_insert(next);
        }
        Formula::Not(a) => letters(a, out),
        Formula::And(a, b) => {
            letters(a, out);
            letters(b, out);
        }
    }
}

/// Truth-table column of letter `i` over `2^k` rows: row `r` assigns true to
/// letter `i` iff bit `i` of `r` is set.
fn column(i: usize, k: usize) -> StateSet {
    let rows = 1usize << k;
    let n_words = rows.div_ceil(64);
    if i < 6 {
        let pattern = (0..64u64)
            .filter(|b| (b >> i) & 1 == 1)
            .fold(0u64, |acc, b| acc | (1 << b));
        StateSet::from_words(rows, std::iter::repeat_n(pattern, n_words))
    } else {
        StateSet::from_words(
            rows,
            (0..n_words).map(|w| if (w >> (i - 6)) & 1 == 1 { !0 } else { 0 }),
        )
    }
}

fn table(f: &Formula, ids: &HashMap<&Formula, usize>, cols: &[StateSet]) -> StateSet {
    match f {
        Formula::Atom(_) | Formula::Modal(..) => cols[ids[f]].clone(),
        Formula::Not(a) => table(a, ids, cols).complement(),
        Formula::And(a, b) => table(a, ids, cols).intersection(&table(b, ids, cols)),
    }
}

/// True iff the propositional abstraction of `f` is a tautology. Atoms and
/// maximal modal subformulas are the letters; structurally equal modal
/// subformulas share a letter.
pub fn check_taut(f: &Formula) -> Result<bool, ProofError> {
    let mut ids = HashMap::new();
    letters(f, &mut ids);
    let k = ids.len();
    if k > MAX_LETTERS {
        return Err(ProofError::TooManyLetters {
            letters: k,
            max: MAX_LETTERS,
        });
    }
    let cols: Vec<StateSet> = (0..k).map(|i| column(i, k)).collect();
    Ok(table(f, &ids, &cols).is_full())
}
