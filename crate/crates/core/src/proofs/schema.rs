//! Axiom schemas and syntactic schema matching.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::formula::{parse, Formula, ParseError};

/// Schematic variables of a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaVar {
    Phi,
    Psi,
}

impl MetaVar {
    /// Atom name standing for the metavariable inside templates. The leading
    /// `?` keeps it out of the parser's identifier space.
    fn placeholder(self) -> &'static str {
        match self {
            MetaVar::Phi => "?phi",
            MetaVar::Psi => "?psi",
        }
    }

    fn from_placeholder(name: &str) -> Option<MetaVar> {
        match name {
            "?phi" => Some(MetaVar::Phi),
            "?psi" => Some(MetaVar::Psi),
            _ => None,
        }
    }

    /// Name used for the metavariable in template source text.
    pub fn source_name(self) -> &'static str {
        match self {
            MetaVar::Phi => "phi",
            MetaVar::Psi => "psi",
        }
    }
}

pub type Substitution = BTreeMap<MetaVar, Formula>;

/// A named formula template over the metavariables `phi` and `psi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    name: String,
    template: Formula,
}

impl Schema {
    /// Parses a template; atoms named `phi` and `psi` become metavariables.
    pub fn from_text(name: impl Into<String>, text: &str) -> Result<Schema, ParseError> {
        let parsed = parse(text)?;
        let template = parsed.substitute(&|atom| match atom {
            "phi" => Some(Formula::atom(MetaVar::Phi.placeholder())),
            "psi" => Some(Formula::atom(MetaVar::Psi.placeholder())),
            _ => None,
        });
        Ok(Schema {
            name: name.into(),
            template,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn template(&self) -> &Formula {
        &self.template
    }

    /// Metavariables occurring in the template, in order.
    pub fn metavars(&self) -> Vec<MetaVar> {
        [MetaVar::Phi, MetaVar::Psi]
            .into_iter()
            .filter(|m| contains_atom(&self.template, m.placeholder()))
            .collect()
    }

    /// Replaces every metavariable by its image; unmapped metavariables are
    /// left as placeholders.
    pub fn instantiate(&self, subst: &Substitution) -> Formula {
        self.template.substitute(&|atom| {
            MetaVar::from_placeholder(atom).and_then(|m| subst.get(&m).cloned())
        })
    }

    /// The substitution that turns the template into `formula`, if any.
    pub fn matches(&self, formula: &Formula) -> Option<Substitution> {
        let mut subst = Substitution::new();
        match_into(&self.template, formula, &mut subst).then_some(subst)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.template.substitute(&|atom| {
            MetaVar::from_placeholder(atom).map(|m| Formula::atom(m.source_name()))
        });
        write!(f, "{}: {}", self.name, shown)
    }
}

fn contains_atom(f: &Formula, name: &str) -> bool {
    match f {
        Formula::Atom(a) => a == name,
        Formula::Not(a) | Formula::Modal(_, a) => contains_atom(a, name),
        Formula::And(a, b) => contains_atom(a, name) || contains_atom(b, name),
    }
}

fn match_into(template: &Formula, target: &Formula, subst: &mut Substitution) -> bool {
    match (template, target) {
        (Formula::Atom(name), _) if MetaVar::from_placeholder(name).is_some() => {
            let m = MetaVar::from_placeholder(name).expect("checked above");
            match subst.get(&m) {
                Some(bound) => bound == target,
                None => {
                    subst.insert(m, target.clone());
                    true
                }
            }
        }
        (Formula::Atom(a), Formula::Atom(b)) => a == b,
        (Formula::Not(a), Formula::Not(b)) => match_into(a, b, subst),
        (Formula::And(a1, a2), Formula::And(b1, b2)) => {
            match_into(a1, b1, subst) && match_into(a2, b2, subst)
        }
        (Formula::Modal(o1, a), Formula::Modal(o2, b)) => o1 == o2 && match_into(a, b, subst),
        _ => false,
    }
}

pub fn match_schema(schema: &Schema, formula: &Formula) -> Option<Substitution> {
    schema.matches(formula)
}

/// The eight axiom schemas of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    KS,
    TS,
    FiveS,
    KA,
    TA,
    FiveA,
    ES,
    Inc,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::KS,
        Axiom::TS,
        Axiom::FiveS,
        Axiom::KA,
        Axiom::TA,
        Axiom::FiveA,
        Axiom::ES,
        Axiom::Inc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::KS => "K_S",
            Axiom::TS => "T_S",
            Axiom::FiveS => "5_S",
            Axiom::KA => "K_A",
            Axiom::TA => "T_A",
            Axiom::FiveA => "5_A",
            Axiom::ES => "ES",
            Axiom::Inc => "Inc",
        }
    }

    pub fn template_text(self) -> &'static str {
        match self {
            Axiom::KS => "S phi & ~S psi -> S (phi & ~psi)",
            Axiom::TS => "phi -> S phi",
            Axiom::FiveS => "S ~S phi -> ~S phi",
            Axiom::KA => "A (phi -> psi) -> A phi -> A psi",
            Axiom::TA => "A phi -> phi",
            Axiom::FiveA => "~A phi -> A ~A phi",
            Axiom::ES => "E phi <-> A (S phi -> phi)",
            Axiom::Inc => "A phi -> ~S ~phi",
        }
    }

    pub fn schema(self) -> Schema {
        Schema::from_text(self.name(), self.template_text()).expect("axiom templates parse")
    }

    pub fn all_schemas() -> Vec<Schema> {
        Axiom::ALL.iter().map(|a| a.schema()).collect()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    /// Case-insensitive; the underscore may be omitted (`ks`, `K_S`).
    fn from_str(s: &str) -> Result<Axiom, UnknownAxiom> {
        let key = s.to_ascii_lowercase().replace('_', "");
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().to_ascii_lowercase().replace('_', "") == key)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn truth_schema_instance() {
        let sub = match_schema(&Axiom::TS.schema(), &f("(p & q) -> S (p & q)")).unwrap();
        assert_eq!(sub.get(&MetaVar::Phi), Some(&f("p & q")));
        assert_eq!(sub.len(), 1);
    }

    #[test]
    fn es_instance() {
        let sub = match_schema(&Axiom::ES.schema(), &f("E p <-> A (S p -> p)")).unwrap();
        assert_eq!(sub.get(&MetaVar::Phi), Some(&f("p")));
    }

    #[test]
    fn inconsistent_binding_fails() {
        assert!(match_schema(&Axiom::TS.schema(), &f("p -> S q")).is_none());
        assert!(match_schema(&Axiom::ES.schema(), &f("E p <-> A (S q -> p)")).is_none());
    }

    #[test]
    fn metavars_bind_modal_formulas() {
        let sub =
            match_schema(&Axiom::KS.schema(), &f("S E p & ~S A q -> S (E p & ~A q)")).unwrap();
        assert_eq!(sub[&MetaVar::Phi], f("E p"));
        assert_eq!(sub[&MetaVar::Psi], f("A q"));
    }

    #[test]
    fn atoms_named_like_metavars_are_plain_atoms_in_instances() {
        let s = Axiom::TA.schema();
        let sub = Substitution::from([(MetaVar::Phi, f("phi"))]);
        let inst = s.instantiate(&sub);
        assert_eq!(inst, f("A phi -> phi"));
        assert_eq!(s.matches(&inst), Some(sub));
    }

    #[test]
    fn names_and_display() {
        assert_eq!("5_s".parse::<Axiom>().unwrap(), Axiom::FiveS);
        assert_eq!("inc".parse::<Axiom>().unwrap(), Axiom::Inc);
        assert_eq!("KA".parse::<Axiom>().unwrap(), Axiom::KA);
        assert!("K".parse::<Axiom>().is_err());
        assert_eq!(
            Axiom::KA.schema().to_string(),
            "K_A: A (phi -> psi) -> A phi -> A psi"
        );
        assert_eq!(
            Axiom::KS.schema().metavars(),
            vec![MetaVar::Phi, MetaVar::Psi]
        );
        assert_eq!(Axiom::FiveA.schema().metavars(), vec![MetaVar::Phi]);
    }
}
