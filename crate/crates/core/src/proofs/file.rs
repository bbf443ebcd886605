//! Text format for derivations.
//!
//! One step per line: `<index>. <formula> ; <justification>`, where the
//! justification is `taut`, `axiom <name>`, `mp <i> <j>`, `necA <i>` or
//! `rs <i>`. Indices must count up from 1. Everything after `#` is a comment;
//! blank lines are skipped.

use thiserror::Error;

use crate::formula::{parse, ParseError};

use super::derivation::{Derivation, Justification, Step};
use super::schema::Axiom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("no steps")]
    NoSteps,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: expected step {expected}, found {found}")]
    OutOfSequence {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
}

fn malformed(line: usize, message: impl Into<String>) -> ProofFileError {
    ProofFileError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_justification(text: &str, line: usize) -> Result<Justification, ProofFileError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let index = |w: &str| {
        w.parse::<usize>()
            .map_err(|_| malformed(line, format!("invalid step reference `{w}`")))
    };
    let (rule, args) = words
        .split_first()
        .ok_or_else(|| malformed(line, "missing justification"))?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(malformed(
                line,
                format!("`{rule}` takes {n} argument(s), found {}", args.len()),
            ))
        }
    };
    match rule.to_ascii_lowercase().as_str() {
        "taut" => {
            arity(0)?;
            Ok(Justification::Taut)
        }
        "axiom" => {
            arity(1)?;
            let axiom: Axiom = args[0]
                .parse()
                .map_err(|e| malformed(line, format!("{e}")))?;
            Ok(Justification::axiom(axiom))
        }
        "mp" => {
            arity(2)?;
            Ok(Justification::ModusPonens(index(args[0])?, index(args[1])?))
        }
        "neca" => {
            arity(1)?;
            Ok(Justification::NecA(index(args[0])?))
        }
        "rs" => {
            arity(1)?;
            Ok(Justification::RuleS(index(args[0])?))
        }
        _ => Err(malformed(line, format!("unknown justification `{rule}`"))),
    }
}

/// Parses a proof file. Only the format is checked here; use
/// [`check_derivation`](super::check_derivation) to check the steps.
pub fn parse_proof(text: &str) -> Result<Derivation, ProofFileError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (number, rest) = content
            .split_once('.')
            .ok_or_else(|| malformed(line, "expected `<index>. <formula> ; <justification>`"))?;
        let found: usize = number
            .trim()
            .parse()
            .map_err(|_| malformed(line, format!("invalid step index `{}`", number.trim())))?;
        let expected = steps.len() + 1;
        if found != expected {
            return Err(ProofFileError::OutOfSequence {
                line,
                expected,
                found,
            });
        }
        let (formula_text, justification_text) = rest
            .rsplit_once(';')
            .ok_or_else(|| malformed(line, "missing `;` before the justification"))?;
        let formula = parse(formula_text.trim())
            .map_err(|source| ProofFileError::Formula { line, source })?;
        steps.push(Step {
            formula,
            justification: parse_justification(justification_text, line)?,
        });
    }
    if steps.is_empty() {
        return Err(ProofFileError::NoSteps);
    }
    Ok(Derivation::new(steps))
}
