//! Derivations in the Hilbert calculus and their checker.
//!
//! Step references are 1-based, matching proof files. Derivations have no
//! hypotheses; every step must be a tautology, an axiom instance, or follow
//! from earlier steps by modus ponens, necessitation for `A`, or the
//! congruence rule for `S`.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

use super::schema::{Axiom, Substitution};
use super::taut::check_taut;
use super::ProofError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Taut,
    /// The substitution is optional; when absent it is recovered by matching.
    Axiom {
        axiom: Axiom,
        substitution: Option<Substitution>,
    },
    /// `ModusPonens(i, j)`: step `j` is `step i -> this step`.
    ModusPonens(usize, usize),
    /// From `a` infer `A a`.
    NecA(usize),
    /// From `a <-> b` infer `S a <-> S b`.
    RuleS(usize),
}

impl Justification {
    pub fn axiom(axiom: Axiom) -> Justification {
        Justification::Axiom {
            axiom,
            substitution: None,
        }
    }

    fn references(&self) -> Vec<usize> {
        match *self {
            Justification::Taut | Justification::Axiom { .. } => Vec::new(),
            Justification::ModusPonens(i, j) => vec![i, j],
            Justification::NecA(i) | Justification::RuleS(i) => vec![i],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Taut => f.write_str("taut"),
            Justification::Axiom { axiom, .. } => write!(f, "axiom {axiom}"),
            Justification::ModusPonens(i, j) => write!(f, "mp {i} {j}"),
            Justification::NecA(i) => write!(f, "necA {i}"),
            Justification::RuleS(i) => write!(f, "rs {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(steps: Vec<Step>) -> Derivation {
        Derivation { steps }
    }

    /// The formula proved by the last step.
    pub fn theorem(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

/// Proof-file rendering, one numbered step per line.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, step.formula, step.justification)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StepFault {
    #[error("reference to step {reference} is out of range")]
    ReferenceOutOfRange { reference: usize },
    #[error("not a tautology")]
    NotTautology,
    #[error("tautology check refused: {0}")]
    TautRefused(String),
    #[error("schema mismatch: not an instance of {axiom}")]
    SchemaMismatch { axiom: Axiom },
    #[error("schema mismatch: instance of {axiom} under a different substitution")]
    SubstitutionMismatch { axiom: Axiom },
    #[error("modus ponens mismatch: step {major} is not `step {minor} -> this step`")]
    ModusPonensMismatch { minor: usize, major: usize },
    #[error("necessitation mismatch: formula is not `A` applied to step {premise}")]
    NecessitationMismatch { premise: usize },
    #[error("rule R_S needs a biconditional at step {premise}")]
    NotBiconditional { premise: usize },
    #[error("rule R_S mismatch: formula is not `S a <-> S b` for step {premise}")]
    RuleSMismatch { premise: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("no steps")]
    Empty,
    #[error("bad step {index}: {fault}")]
    BadStep { index: usize, fault: StepFault },
}

/// Checks a single step against the steps before it (`earlier` holds the
/// formulas of steps `1..index`).
fn check_step(step: &Step, earlier: &[&Formula]) -> Result<(), StepFault> {
    for r in step.justification.references() {
        if r == 0 || r > earlier.len() {
            return Err(StepFault::ReferenceOutOfRange { reference: r });
        }
    }
    let get = |i: usize| earlier[i - 1];
    let f = &step.formula;
    match &step.justification {
        Justification::Taut => match check_taut(f) {
            Ok(true) => Ok(()),
            Ok(false) => Err(StepFault::NotTautology),
            Err(e) => Err(StepFault::TautRefused(e.to_string())),
        },
        Justification::Axiom {
            axiom,
            substitution,
        } => {
            let schema = axiom.schema();
            match (schema.matches(f), substitution) {
                (None, _) => Err(StepFault::SchemaMismatch { axiom: *axiom }),
                (Some(found), Some(given)) if &found != given => {
                    Err(StepFault::SubstitutionMismatch { axiom: *axiom })
                }
                _ => Ok(()),
            }
        }
        &Justification::ModusPonens(i, j) => match get(j).as_implication() {
            Some((ante, cons)) if ante == get(i) && cons == f => Ok(()),
            _ => Err(StepFault::ModusPonensMismatch { minor: i, major: j }),
        },
        &Justification::NecA(i) => {
            if *f == Formula::a(get(i).clone()) {
                Ok(())
            } else {
                Err(StepFault::NecessitationMismatch { premise: i })
            }
        }
        &Justification::RuleS(i) => {
            let (a, b) = get(i)
                .as_biconditional()
                .ok_or(StepFault::NotBiconditional { premise: i })?;
            if *f == Formula::iff(Formula::s(a.clone()), Formula::s(b.clone())) {
                Ok(())
            } else {
                Err(StepFault::RuleSMismatch { premise: i })
            }
        }
    }
}

/// Checks every step in order and returns the proved theorem, or the first
/// bad step.
pub fn check_derivation(d: &Derivation) -> Result<&Formula, DerivationError> {
    if d.steps.is_empty() {
        return Err(DerivationError::Empty);
    }
    let mut earlier: Vec<&Formula> = Vec::with_capacity(d.steps.len());
    for (i, step) in d.steps.iter().enumerate() {
        check_step(step, &earlier).map_err(|fault| DerivationError::BadStep {
            index: i + 1,
            fault,
        })?;
        earlier.push(&step.formula);
    }
    Ok(d.theorem().expect("nonempty"))
}

/// Builds derivations one rule application at a time, computing each
/// conclusion. Every method returns the 1-based index of the new step.
#[derive(Clone, Debug, Default)]
pub struct DerivationBuilder {
    steps: Vec<Step>,
}

impl DerivationBuilder {
    pub fn new() -> DerivationBuilder {
        DerivationBuilder::default()
    }

    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(Step {
            formula,
            justification,
        });
        self.steps.len()
    }

    fn formula(&self, index: usize) -> Result<&Formula, StepFault> {
        if index == 0 || index > self.steps.len() {
            return Err(StepFault::ReferenceOutOfRange { reference: index });
        }
        Ok(&self.steps[index - 1].formula)
    }

    pub fn step(&self, index: usize) -> Option<&Formula> {
        self.formula(index).ok()
    }

    pub fn taut(&mut self, f: Formula) -> Result<usize, ProofError> {
        if !check_taut(&f)? {
            return Err(ProofError::NotTautology(f));
        }
        Ok(self.push(f, Justification::Taut))
    }

    pub fn axiom(&mut self, axiom: Axiom, substitution: Substitution) -> usize {
        let f = axiom.schema().instantiate(&substitution);
        self.push(
            f,
            Justification::Axiom {
                axiom,
                substitution: Some(substitution),
            },
        )
    }

    pub fn mp(&mut self, minor: usize, major: usize) -> Result<usize, StepFault> {
        let premise = self.formula(minor)?.clone();
        let conclusion = match self.formula(major)?.as_implication() {
            Some((ante, cons)) if *ante == premise => cons.clone(),
            _ => return Err(StepFault::ModusPonensMismatch { minor, major }),
        };
        Ok(self.push(conclusion, Justification::ModusPonens(minor, major)))
    }

    pub fn nec_a(&mut self, premise: usize) -> Result<usize, StepFault> {
        let f = Formula::a(self.formula(premise)?.clone());
        Ok(self.push(f, Justification::NecA(premise)))
    }

    pub fn rule_s(&mut self, premise: usize) -> Result<usize, StepFault> {
        let (a, b) = self
            .formula(premise)?
            .as_biconditional()
            .ok_or(StepFault::NotBiconditional { premise })?;
        let f = Formula::iff(Formula::s(a.clone()), Formula::s(b.clone()));
        Ok(self.push(f, Justification::RuleS(premise)))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn finish(self) -> Derivation {
        Derivation { steps: self.steps }
    }
}
