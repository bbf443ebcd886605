//! Truth conditions for expertise models and for relational models.
//!
//! Formulas are compiled into a DAG in which structurally equal subformulas
//! share a node, so each distinct subformula's extension is computed exactly
//! once per model. Nothing is cached across queries.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{translate_t, Formula, Modality};
use crate::model::{to_s5_model, ExpertiseModel, RelationalModel, SetFamily};
use crate::stateset::StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {index} out of range for a model with {n_states} states")]
    StateOutOfRange { index: usize, n_states: usize },
    #[error("operator {op} is not interpreted by {semantics}")]
    UnsupportedOperator {
        op: Modality,
        semantics: &'static str,
    },
}

/// How the soundness and expertise clauses are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClauseRule {
    /// `S a` holds at `x` iff the block of `x` meets the extension of `a`;
    /// `E a` holds iff the extension of `a` is a union of blocks.
    #[default]
    Blocks,
    /// Quantifies over the materialized expertise set: `S a` holds at `x` iff
    /// every member containing the extension of `a` contains `x`; `E a` holds
    /// iff the extension of `a` is a member.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Atom(String),
    Not(usize),
    And(usize, usize),
    Modal(Modality, usize),
}

/// A formula flattened into a shared-subterm DAG, children before parents.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    formula: Formula,
    nodes: Vec<Node>,
}

impl CompiledFormula {
    pub fn new(formula: &Formula) -> CompiledFormula {
        let mut nodes = Vec::new();
        let mut ids: HashMap<&Formula, usize> = HashMap::new();
        intern(formula, &mut nodes, &mut ids);
        CompiledFormula {
            formula: formula.clone(),
            nodes,
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// Number of distinct subformulas.
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    fn run<I: Interpretation>(&self, interp: &mut I) -> Result<StateSet, EvalError> {
        let n = interp.n_states();
        let mut values: Vec<StateSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Atom(name) => interp.atom(name),
                Node::Not(a) => values[*a].complement(),
                Node::And(a, b) => values[*a].intersection(&values[*b]),
                Node::Modal(Modality::A, a) => {
                    if values[*a].is_full() {
                        StateSet::full(n)
                    } else {
                        StateSet::empty(n)
                    }
                }
                Node::Modal(op, a) => interp.modal(*op, &values[*a])?,
            };
            values.push(v);
        }
        Ok(values.pop().expect("compiled formula has a root"))
    }

    /// Extension in an expertise model.
    pub fn extension(
        &self,
        model: &ExpertiseModel,
        rule: ClauseRule,
    ) -> Result<StateSet, EvalError> {
        self.run(&mut ExpertiseInterp {
            model,
            rule,
            family: None,
        })
    }

    /// Extension in a relational model.
    pub fn relational_extension(&self, model: &RelationalModel) -> Result<StateSet, EvalError> {
        self.run(&mut RelationalInterp { model })
    }
}

fn intern<'f>(
    f: &'f Formula,
    nodes: &mut Vec<Node>,
    ids: &mut HashMap<&'f Formula, usize>,
) -> usize {
    if let Some(&id) = ids.get(f) {
        return id;
    }
    let node = match f {
        Formula::Atom(name) => Node::Atom(name.clone()),
        Formula::Not(a) => Node::Not(intern(a, nodes, ids)),
        Formula::And(a, b) => {
            let a = intern(a, nodes, ids);
            let b = intern(b, nodes, ids);
            Node::And(a, b)
        }
        Formula::Modal(op, a) => Node::Modal(*op, intern(a, nodes, ids)),
    };
    nodes.push(node);
    let id = nodes.len() - 1;
    ids.insert(f, id);
    id
}

trait Interpretation {
    fn n_states(&self) -> usize;
    fn atom(&self, name: &str) -> StateSet;
    /// Clauses for every modality except `A`, which is shared.
    fn modal(&mut self, op: Modality, arg: &StateSet) -> Result<StateSet, EvalError>;
}

struct ExpertiseInterp<'m> {
    model: &'m ExpertiseModel,
    rule: ClauseRule,
    family: Option<SetFamily>,
}

impl ExpertiseInterp<'_> {
    fn family(&mut self) -> &SetFamily {
        let model = self.model;
        self.family.get_or_insert_with(|| model.expertise_set())
    }
}

impl Interpretation for ExpertiseInterp<'_> {
    fn n_states(&self) -> usize {
        self.model.n_states()
    }

    fn atom(&self, name: &str) -> StateSet {
        self.model.atom_extension(name)
    }

    fn modal(&mut self, op: Modality, arg: &StateSet) -> Result<StateSet, EvalError> {
        let n = self.n_states();
        let all_or_nothing = |b: bool| {
            if b {
                StateSet::full(n)
            } else {
                StateSet::empty(n)
            }
        };
        match (op, self.rule) {
            (Modality::E, ClauseRule::Blocks) => Ok(all_or_nothing(
                self.model.partition().is_union_of_blocks(arg),
            )),
            (Modality::E, ClauseRule::Literal) => Ok(all_or_nothing(self.family().contains(arg))),
            (Modality::S, ClauseRule::Blocks) => Ok(self.model.partition().saturate(arg)),
            (Modality::S, ClauseRule::Literal) => {
                let mut out = StateSet::full(n);
                for a in self.family().sets().iter().filter(|a| arg.is_subset(a)) {
                    out.intersect_with(a);
                }
                Ok(out)
            }
            (op, _) => Err(EvalError::UnsupportedOperator {
                op,
                semantics: "expertise models",
            }),
        }
    }
}

struct RelationalInterp<'m> {
    model: &'m RelationalModel,
}

impl Interpretation for RelationalInterp<'_> {
    fn n_states(&self) -> usize {
        self.model.n_states()
    }

    fn atom(&self, name: &str) -> StateSet {
        self.model.atom_extension(name)
    }

    fn modal(&mut self, op: Modality, arg: &StateSet) -> Result<StateSet, EvalError> {
        match op {
            Modality::K => Ok(StateSet::from_indices(
                self.n_states(),
                (0..self.n_states()).filter(|&x| self.model.successors(x).is_subset(arg)),
            )),
            op => Err(EvalError::UnsupportedOperator {
                op,
                semantics: "relational models",
            }),
        }
    }
}

/// The set of states of a model at which a formula holds.
#[derive(Clone, Debug)]
pub struct Extension<'m> {
    pub model: &'m ExpertiseModel,
    pub formula: Formula,
    pub states: StateSet,
}

impl Extension<'_> {
    pub fn is_global(&self) -> bool {
        self.states.is_full()
    }

    pub fn state_names(&self) -> Vec<&str> {
        self.model.set_names(&self.states)
    }
}

fn check_state(index: usize, n_states: usize) -> Result<(), EvalError> {
    if index < n_states {
        Ok(())
    } else {
        Err(EvalError::StateOutOfRange { index, n_states })
    }
}

pub fn extension_with<'m>(
    model: &'m ExpertiseModel,
    formula: &Formula,
    rule: ClauseRule,
) -> Result<Extension<'m>, EvalError> {
    let states = CompiledFormula::new(formula).extension(model, rule)?;
    Ok(Extension {
        model,
        formula: formula.clone(),
        states,
    })
}

pub fn extension<'m>(
    model: &'m ExpertiseModel,
    formula: &Formula,
) -> Result<Extension<'m>, EvalError> {
    extension_with(model, formula, ClauseRule::default())
}

pub fn eval(model: &ExpertiseModel, state: usize, formula: &Formula) -> Result<bool, EvalError> {
    check_state(state, model.n_states())?;
    Ok(extension(model, formula)?.states.contains(state))
}

pub fn eval_named(
    model: &ExpertiseModel,
    state: &str,
    formula: &Formula,
) -> Result<bool, EvalError> {
    let index = model
        .state_index(state)
        .ok_or_else(|| EvalError::UnknownState(state.to_string()))?;
    eval(model, index, formula)
}

pub fn globally_true(model: &ExpertiseModel, formula: &Formula) -> Result<bool, EvalError> {
    Ok(extension(model, formula)?.is_global())
}

pub fn relational_extension(
    model: &RelationalModel,
    formula: &Formula,
) -> Result<StateSet, EvalError> {
    CompiledFormula::new(formula).relational_extension(model)
}

pub fn eval_relational(
    model: &RelationalModel,
    state: usize,
    formula: &Formula,
) -> Result<bool, EvalError> {
    check_state(state, model.n_states())?;
    Ok(relational_extension(model, formula)?.contains(state))
}

pub fn eval_relational_named(
    model: &RelationalModel,
    state: &str,
    formula: &Formula,
) -> Result<bool, EvalError> {
    let index = model
        .state_index(state)
        .ok_or_else(|| EvalError::UnknownState(state.to_string()))?;
    eval_relational(model, index, formula)
}

/// Outcome of comparing a formula in an expertise model with its translation
/// in the induced S5 model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correspondence {
    Agree,
    /// Least state at which the two evaluations differ.
    Mismatch {
        state: usize,
        expertise: bool,
        relational: bool,
    },
}

pub fn check_correspondence(
    model: &ExpertiseModel,
    formula: &Formula,
) -> Result<Correspondence, EvalError> {
    let translated = translate_t(formula).map_err(|_| EvalError::UnsupportedOperator {
        op: Modality::K,
        semantics: "expertise models",
    })?;
    let direct = extension(model, formula)?.states;
    let via_s5 = relational_extension(&to_s5_model(model), &translated)?;
    Ok(
        match direct
            .union(&via_s5)
            .difference(&direct.intersection(&via_s5))
            .first()
        {
            None => Correspondence::Agree,
            Some(state) => Correspondence::Mismatch {
                state,
                expertise: direct.contains(state),
                relational: via_s5.contains(state),
            },
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::model::Partition;
    use std::collections::BTreeMap;

    fn economist() -> ExpertiseModel {
        ExpertiseModel::from_names(
            &["a", "b", "c", "d"],
            &[&["a", "c"], &["b", "d"]],
            &[("r", &["a", "c"]), ("p", &["a", "b"])],
        )
        .unwrap()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn ext_names(m: &ExpertiseModel, s: &str) -> Vec<String> {
        extension(m, &f(s))
            .unwrap()
            .state_names()
            .into_iter()
            .map(String::from)
            .collect()
    }

    #[test]
    fn economist_example() {
        let m = economist();
        for x in 0..4 {
            assert!(eval(&m, x, &f("E r")).unwrap());
        }
        assert!(eval_named(&m, "c", &f("S (r & p)")).unwrap());
        assert!(!eval_named(&m, "c", &f("r & p")).unwrap());
        // Supersets of {a} in P are {a,c} and X; {a,c} excludes b.
        assert!(!eval_named(&m, "b", &f("S (r & p)")).unwrap());
    }

    #[test]
    fn economist_extensions() {
        let m = economist();
        assert_eq!(ext_names(&m, "r & p"), ["a"]);
        assert_eq!(ext_names(&m, "T"), ["a", "b", "c", "d"]);
        assert_eq!(ext_names(&m, "~S (r & p)"), ["b", "d"]);
    }

    #[test]
    fn global_truth() {
        let m = economist();
        assert!(globally_true(&m, &f("E r")).unwrap());
        assert!(!globally_true(&m, &f("E p")).unwrap());
        assert!(globally_true(&m, &f("p -> S p")).unwrap());
    }

    #[test]
    fn errors() {
        let m = economist();
        assert_eq!(
            eval_named(&m, "z", &f("p")),
            Err(EvalError::UnknownState("z".into()))
        );
        assert!(matches!(
            eval(&m, 9, &f("p")),
            Err(EvalError::StateOutOfRange { .. })
        ));
        assert!(matches!(
            eval(&m, 0, &f("K p")),
            Err(EvalError::UnsupportedOperator {
                op: Modality::K,
                ..
            })
        ));
        let s5 = to_s5_model(&m);
        assert!(matches!(
            eval_relational(&s5, 0, &f("S p")),
            Err(EvalError::UnsupportedOperator {
                op: Modality::S,
                ..
            })
        ));
    }

    #[test]
    fn missing_atoms_are_false() {
        let m = economist();
        assert!(extension(&m, &f("zzz")).unwrap().states.is_empty());
    }

    #[test]
    fn relational_examples() {
        let s5 = to_s5_model(&economist());
        assert!(eval_relational_named(&s5, "c", &f("~K ~(r & p)")).unwrap());

        let id =
            RelationalModel::from_names(&["a", "b"], &[("a", "a"), ("b", "b")], &[("p", &["a"])])
                .unwrap();
        for x in 0..2 {
            assert!(eval_relational(&id, x, &f("K p <-> p")).unwrap());
        }
        let total = to_s5_model(
            &ExpertiseModel::new(
                vec!["a".into(), "b".into()],
                Partition::coarsest(2),
                BTreeMap::from([("p".to_string(), StateSet::singleton(2, 0))]),
            )
            .unwrap(),
        );
        for x in 0..2 {
            assert!(!eval_relational(&total, x, &f("K p")).unwrap());
        }
    }

    #[test]
    fn correspondence_examples() {
        let m = economist();
        for s in ["S (r & p)", "E p", "E r", "A p", "S ~E p -> A S r"] {
            assert_eq!(
                check_correspondence(&m, &f(s)).unwrap(),
                Correspondence::Agree,
                "{s}"
            );
        }
    }

    #[test]
    fn literal_rule_matches_blocks_on_economist() {
        let m = economist();
        for s in ["S (r & p)", "E p", "S ~S p", "E (r | p) & S E p"] {
            let a = extension_with(&m, &f(s), ClauseRule::Blocks)
                .unwrap()
                .states;
            let b = extension_with(&m, &f(s), ClauseRule::Literal)
                .unwrap()
                .states;
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn shared_subformulas_compile_once() {
        let c = CompiledFormula::new(&f("S p <-> S p"));
        // p, S p, ~S p, S p & ~S p, ~(S p & ~S p), and the conjunction of two equal halves
        assert_eq!(c.n_nodes(), 6);
    }
}
