use thiserror::Error;

use super::{Formula, Modality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(
        "input contains the knowledge operator K, which is not part of the expertise language"
    )]
    ContainsKnowledge,
}

/// Translation into the knowledge language: `E a` becomes `A (a -> K a)`,
/// `S a` becomes `~K ~a`, everything else is mapped homomorphically.
pub fn translate_t(f: &Formula) -> Result<Formula, TranslateError> {
    if !f.in_l() {
        return Err(TranslateError::ContainsKnowledge);
    }
    Ok(t(f))
}

fn t(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(a) => Formula::not(t(a)),
        Formula::And(a, b) => Formula::and(t(a), t(b)),
        Formula::Modal(Modality::E, a) => {
            let ta = t(a);
            Formula::a(Formula::implies(ta.clone(), Formula::k(ta)))
        }
        Formula::Modal(Modality::S, a) => Formula::not(Formula::k(Formula::not(t(a)))),
        Formula::Modal(op, a) => Formula::modal(*op, t(a)),
    }
}

/// Eliminates `E` in favour of `S` and `A`: `E a` becomes `A (S a -> a)`.
pub fn embed_g(f: &Formula) -> Result<Formula, TranslateError> {
    if !f.in_l() {
        return Err(TranslateError::ContainsKnowledge);
    }
    Ok(g(f))
}

fn g(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(a) => Formula::not(g(a)),
        Formula::And(a, b) => Formula::and(g(a), g(b)),
        Formula::Modal(Modality::E, a) => {
            let ga = g(a);
            Formula::a(Formula::implies(Formula::s(ga.clone()), ga))
        }
        Formula::Modal(op, a) => Formula::modal(*op, g(a)),
    }
}
