//! Bounded validity: exhaustive countermodel search over all expertise models
//! with at most a given number of states.
//!
//! A negative answer is only ever reported as "no countermodel with <= n
//! states"; the search is not a decision procedure.

mod enumerate;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::formula::Formula;
use crate::model::ExpertiseModel;
use crate::semantics::{extension_with, ClauseRule, CompiledFormula, EvalError};

pub use enumerate::{
    bell, enumerate_models, partitions, EnumerationSpec, ModelStream, RestrictedGrowth,
};

/// Default state bound.
pub const DEFAULT_MAX_STATES: usize = 4;
/// Number of atoms the default bound is sized for.
pub const DEFAULT_ATOM_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the state bound must be at least 1")]
    NoStates,
    #[error("atom `{0}` listed twice")]
    DuplicateAtom(String),
    #[error("search space too large: {n_states} states with {n_atoms} atoms")]
    SpaceTooLarge { n_states: usize, n_atoms: usize },
    #[error("atom `{0}` of the formula is not among the enumerated atoms")]
    UnknownAtom(String),
    #[error("formula contains K, which expertise models do not interpret")]
    ContainsKnowledge,
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The bound used when none is given: all atoms of the formula and
/// [`DEFAULT_MAX_STATES`] states. Formulas with more than
/// [`DEFAULT_ATOM_CAP`] atoms get fewer states, keeping the number of models
/// per size within the budget of the default bound.
pub fn default_spec(formula: &Formula) -> EnumerationSpec {
    let atoms: Vec<String> = formula.atoms().into_iter().collect();
    EnumerationSpec {
        n_states: default_max_states(atoms.len()),
        atoms,
        limit: None,
    }
}

/// The default state bound for `n_atoms` atoms.
pub fn default_max_states(n_atoms: usize) -> usize {
    let budget = enumerate::count_models(DEFAULT_MAX_STATES, DEFAULT_ATOM_CAP);
    let mut n = DEFAULT_MAX_STATES;
    while n > 1 && enumerate::count_models(n, n_atoms) > budget {
        n -= 1;
    }
    n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    ValidUpToBound,
    CountermodelFound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ValidUpToBound => "valid-up-to-bound",
            Status::CountermodelFound => "countermodel-found",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: ExpertiseModel,
    pub state: usize,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    formula: Formula,
    status: Status,
    witness: Option<Witness>,
    max_states: usize,
    atoms: Vec<String>,
    models_checked: u64,
    models_total: u128,
    truncated: bool,
    elapsed: Duration,
}

impl Verdict {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn is_countermodel(&self) -> bool {
        self.status == Status::CountermodelFound
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Models in enumeration order up to and including the witness, or every
    /// model visited when there is none.
    pub fn models_checked(&self) -> u64 {
        self.models_checked
    }

    pub fn models_total(&self) -> u128 {
        self.models_total
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    pub fn summary(&self) -> String {
        match &self.witness {
            Some(w) => format!(
                "countermodel with {} state{}, false at {}",
                w.model.n_states(),
                if w.model.n_states() == 1 { "" } else { "s" },
                w.model.states()[w.state]
            ),
            None if self.truncated => format!(
                "no countermodel among the first {} models with <= {} states (search truncated)",
                self.models_checked, self.max_states
            ),
            None => format!("no countermodel with <= {} states", self.max_states),
        }
    }

    /// JSON report. Wall time is only included on request so that the
    /// default report is byte-identical across runs.
    pub fn to_json(&self, with_timing: bool) -> serde_json::Value {
        let mut report = json!({
            "status": self.status.as_str(),
            "formula": self.formula.to_string(),
            "bound": { "max_states": self.max_states, "atoms": self.atoms },
            "message": self.summary(),
            "witness": self.witness.as_ref().map(|w| json!({
                "model": w.model.to_json_value(),
                "state": w.model.states()[w.state],
            })),
            "models_checked": self.models_checked,
            "models_total": self.models_total.to_string(),
            "truncated": self.truncated,
        });
        if with_timing {
            report["elapsed_ms"] = json!(self.elapsed.as_secs_f64() * 1e3);
        }
        report
    }
}

struct Chunk {
    size: usize,
    partition: crate::model::Partition,
    offset: u64,
    n_valuations: u64,
}

/// Searches all models with `1..=spec.n_states` states for a state falsifying
/// `formula`. The witness is the first in enumeration order (smaller models
/// first, then partition order, then valuation order, then state order),
/// independent of how many worker threads take part.
pub fn find_countermodel(
    formula: &Formula,
    spec: &EnumerationSpec,
) -> Result<Verdict, SearchError> {
    let start = Instant::now();
    spec.validate()?;
    if !formula.in_l() {
        return Err(SearchError::ContainsKnowledge);
    }
    if let Some(missing) = formula
        .atoms()
        .into_iter()
        .find(|a| !spec.atoms.contains(a))
    {
        return Err(SearchError::UnknownAtom(missing));
    }
    let compiled = CompiledFormula::new(formula);
    let k = spec.atoms.len();

    let mut chunks = Vec::new();
    let mut offset = 0u64;
    for size in 1..=spec.n_states {
        let n_valuations = 1u64 << (size * k);
        for partition in partitions(size) {
            chunks.push(Chunk {
                size,
                partition,
                offset,
                n_valuations,
            });
            offset += n_valuations;
        }
    }
    let total = offset;
    let budget = spec.limit.map_or(total, |l| l.min(total));

    let best = AtomicU64::new(u64::MAX);
    let found = chunks
        .par_iter()
        .map(|chunk| -> Result<Option<(u64, Witness)>, SearchError> {
            let names = enumerate::state_names(chunk.size);
            for counter in 0..chunk.n_valuations {
                let index = chunk.offset + counter;
                if index >= budget || index > best.load(Ordering::Relaxed) {
                    break;
                }
                let model = enumerate::build_model(&names, &chunk.partition, &spec.atoms, counter);
                let ext = compiled.extension(&model, ClauseRule::Blocks)?;
                if let Some(state) = ext.complement().first() {
                    best.fetch_min(index, Ordering::Relaxed);
                    return Ok(Some((index, Witness { model, state })));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .min_by_key(|(index, _)| *index);

    let base = Verdict {
        formula: formula.clone(),
        status: Status::ValidUpToBound,
        witness: None,
        max_states: spec.n_states,
        atoms: spec.atoms.clone(),
        models_checked: budget,
        models_total: total as u128,
        truncated: budget < total,
        elapsed: Duration::ZERO,
    };
    let verdict = match found {
        None => base,
        Some((index, witness)) => {
            // Re-check the witness with the literal clauses.
            let literal = extension_with(&witness.model, formula, ClauseRule::Literal)?;
            if literal.states.contains(witness.state) {
                return Err(SearchError::WitnessRejected(witness.model.to_string()));
            }
            Verdict {
                status: Status::CountermodelFound,
                witness: Some(witness),
                models_checked: index + 1,
                truncated: false,
                ..base
            }
        }
    };
    Ok(Verdict {
        elapsed: start.elapsed(),
        ..verdict
    })
}

/// Every model with between one and `spec.n_states` states, in enumeration
/// order, stopping after `spec.limit` models if set.
pub fn models_up_to(spec: &EnumerationSpec) -> Result<Vec<ExpertiseModel>, SearchError> {
    spec.validate()?;
    let budget = spec.limit.unwrap_or(u64::MAX);
    let mut out = Vec::new();
    for size in 1..=spec.n_states {
        let remaining = budget.saturating_sub(out.len() as u64);
        let sized = EnumerationSpec {
            n_states: size,
            atoms: spec.atoms.clone(),
            limit: Some(remaining),
        };
        out.extend(enumerate_models(&sized)?);
    }
    Ok(out)
}

/// Bounded check of `left <-> right`.
pub fn check_equivalence(
    left: &Formula,
    right: &Formula,
    spec: &EnumerationSpec,
) -> Result<Verdict, SearchError> {
    find_countermodel(&Formula::iff(left.clone(), right.clone()), spec)
}
