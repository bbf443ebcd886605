//! Formulas of the expertise language and its S5 translation target.
//!
//! One AST serves every fragment: the full language (atoms, `~`, `&`, `E`,
//! `S`, `A`), the `S`/`A` fragment without `E`, and the `K`/`A` language used
//! by the relational semantics. Fragment membership is a predicate on the tree
//! ([`Formula::in_l`], [`Formula::in_l_sa`], [`Formula::in_l_ka`]).
//!
//! Derived connectives (`|`, `->`, `<->`, `T`, `F`) and the dual operators
//! (`E^`, `S^`, `A^`, `K^`) exist only in concrete syntax and are desugared by
//! the parser:
//!
//! | sugar      | core form                     |
//! |------------|-------------------------------|
//! | `a \| b`   | `~(~a & ~b)`                  |
//! | `a -> b`   | `~(a & ~b)`                   |
//! | `a <-> b`  | `(a -> b) & (b -> a)`         |
//! | `T`        | `_top \| ~_top`               |
//! | `F`        | `~T`                          |
//! | `O^ a`     | `~O ~a` for `O` in `E S A K`  |
//!
//! `_top` is a reserved atom that the identifier grammar cannot produce, so `T`
//! never collides with a user proposition.

mod parse;
mod render;
mod translate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use parse::{parse, ParseError};
pub use render::render;
pub use translate::{embed_g, translate_t, TranslateError};

/// Name of the atom used to build the constant `T`.
pub const TOP_ATOM: &str = "_top";

/// The four modal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    /// Expertise.
    E,
    /// Soundness.
    S,
    /// Universal modality.
    A,
    /// S5 knowledge; only in the translation target.
    K,
}

impl Modality {
    pub fn symbol(self) -> &'static str {
        match self {
            Modality::E => "E",
            Modality::S => "S",
            Modality::A => "A",
            Modality::K => "K",
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Modal(Modality, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn modal(op: Modality, inner: Formula) -> Formula {
        Formula::Modal(op, Box::new(inner))
    }

    pub fn e(inner: Formula) -> Formula {
        Formula::modal(Modality::E, inner)
    }

    pub fn s(inner: Formula) -> Formula {
        Formula::modal(Modality::S, inner)
    }

    pub fn a(inner: Formula) -> Formula {
        Formula::modal(Modality::A, inner)
    }

    pub fn k(inner: Formula) -> Formula {
        Formula::modal(Modality::K, inner)
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(left), Formula::not(right)))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::not(Formula::and(left, Formula::not(right)))
    }

    pub fn iff(left: Formula, right: Formula) -> Formula {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    pub fn top() -> Formula {
        let t = Formula::atom(TOP_ATOM);
        Formula::or(t.clone(), Formula::not(t))
    }

    pub fn bottom() -> Formula {
        Formula::not(Formula::top())
    }

    /// `~O ~inner`.
    pub fn dual(op: Modality, inner: Formula) -> Formula {
        Formula::not(Formula::modal(op, Formula::not(inner)))
    }

    /// Splits `a -> b` (that is, `~(a & ~b)`) into its two sides.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(l, r) => match r.as_ref() {
                    Formula::Not(rr) => Some((l, rr)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Splits `a <-> b` into its two sides.
    pub fn as_biconditional(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => {
                let (a, b) = l.as_implication()?;
                let (b2, a2) = r.as_implication()?;
                (a == a2 && b == b2).then_some((a, b))
            }
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        *self == Formula::top()
    }

    pub fn is_bottom(&self) -> bool {
        *self == Formula::bottom()
    }

    /// Atom names occurring in the formula, excluding the reserved `T` atom.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if name != TOP_ATOM {
                    out.insert(name.clone());
                }
            }
            Formula::Not(a) | Formula::Modal(_, a) => a.collect_atoms(out),
            Formula::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn contains_modality(&self, op: Modality) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Not(a) => a.contains_modality(op),
            Formula::And(a, b) => a.contains_modality(op) || b.contains_modality(op),
            Formula::Modal(o, a) => *o == op || a.contains_modality(op),
        }
    }

    /// Member of the expertise language (no `K`).
    pub fn in_l(&self) -> bool {
        !self.contains_modality(Modality::K)
    }

    /// Member of the `S`/`A` fragment (no `E`, no `K`).
    pub fn in_l_sa(&self) -> bool {
        self.in_l() && !self.contains_modality(Modality::E)
    }

    /// Member of the knowledge language (no `E`, no `S`).
    pub fn in_l_ka(&self) -> bool {
        !self.contains_modality(Modality::E) && !self.contains_modality(Modality::S)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Modal(_, a) => 1 + a.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Modal(_, a) => 1 + a.modal_depth(),
        }
    }

    /// Replaces every atom named in `map` by the mapped formula.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(name) => map(name).unwrap_or_else(|| self.clone()),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Modal(op, a) => Formula::modal(*op, a.substitute(map)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
