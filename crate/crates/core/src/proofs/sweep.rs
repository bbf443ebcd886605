//! Soundness sweeps: every schema instance over a corpus, checked on every
//! small model.

use rayon::prelude::*;

use crate::formula::Formula;
use crate::semantics::{ClauseRule, CompiledFormula};
use crate::validity::{find_countermodel, models_up_to, EnumerationSpec, SearchError, Verdict};

use super::schema::{MetaVar, Schema, Substitution};

/// One instantiation of a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub schema: String,
    pub substitution: Substitution,
    pub formula: Formula,
}

#[derive(Clone, Debug)]
pub struct SweepViolation {
    pub instance: Instance,
    /// The least countermodel in enumeration order.
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub schemas: Vec<String>,
    pub instances_checked: usize,
    pub models_checked: usize,
    pub max_states: usize,
    pub atoms: Vec<String>,
    /// In schema order, then corpus order.
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Names of the schemas with at least one violating instance.
    pub fn violating_schemas(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !names.contains(&v.instance.schema.as_str()) {
                names.push(&v.instance.schema);
            }
        }
        names
    }
}

/// All instances of `schema` with metavariables drawn from `corpus`, phi
/// varying slowest.
pub fn instances(schema: &Schema, corpus: &[Formula]) -> Vec<Instance> {
    let mut substitutions = vec![Substitution::new()];
    for m in schema.metavars() {
        substitutions = substitutions
            .into_iter()
            .flat_map(|s| {
                corpus.iter().map(move |f| {
                    let mut s = s.clone();
                    s.insert(m, f.clone());
                    s
                })
            })
            .collect();
    }
    substitutions
        .into_iter()
        .map(|substitution| Instance {
            schema: schema.name().to_string(),
            formula: schema.instantiate(&substitution),
            substitution,
        })
        .collect()
}

/// Instantiates every schema over `corpus` and checks every instance on every
/// model within `spec`. Violating instances get a countermodel from
/// [`find_countermodel`].
pub fn soundness_sweep(
    schemas: &[Schema],
    corpus: &[Formula],
    spec: &EnumerationSpec,
) -> Result<SweepReport, SearchError> {
    let all: Vec<Instance> = schemas.iter().flat_map(|s| instances(s, corpus)).collect();
    for inst in &all {
        if !inst.formula.in_l() {
            return Err(SearchError::ContainsKnowledge);
        }
        if let Some(missing) = inst
            .formula
            .atoms()
            .into_iter()
            .find(|a| !spec.atoms.contains(a))
        {
            return Err(SearchError::UnknownAtom(missing));
        }
    }
    let compiled: Vec<CompiledFormula> = all
        .iter()
        .map(|i| CompiledFormula::new(&i.formula))
        .collect();
    let models = models_up_to(spec)?;

    let failing = models
        .par_iter()
        .map(|model| -> Result<Vec<bool>, SearchError> {
            compiled
                .iter()
                .map(|c| Ok(!c.extension(model, ClauseRule::Blocks)?.is_full()))
                .collect()
        })
        .try_reduce(
            || vec![false; compiled.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                Ok(a)
            },
        )?;

    let violations = all
        .into_iter()
        .zip(failing)
        .filter(|(_, failed)| *failed)
        .map(|(instance, _)| {
            let verdict = find_countermodel(&instance.formula, spec)?;
            Ok(SweepViolation { instance, verdict })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;

    Ok(SweepReport {
        schemas: schemas.iter().map(|s| s.name().to_string()).collect(),
        instances_checked: compiled.len(),
        models_checked: models.len(),
        max_states: spec.n_states,
        atoms: spec.atoms.clone(),
        violations,
    })
}

/// Names a substitution for reports, e.g. `phi := p, psi := S q`.
pub fn describe_substitution(s: &Substitution) -> String {
    s.iter()
        .map(|(m, f): (&MetaVar, &Formula)| format!("{} := {}", m.source_name(), f))
        .collect::<Vec<_>>()
        .join(", ")
}
