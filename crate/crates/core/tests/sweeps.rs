//! Exhaustive checks over every small model.

use std::collections::HashSet;

use expertise_core::corpus::{corpus, ATOMS};
use expertise_core::formula::{parse, translate_t, Formula};
use expertise_core::model::{
    expertise_set_from_partition, partition_from_expertise_set, to_s5_model, verify_expertise_set,
    SetFamily,
};
use expertise_core::proofs::{soundness_sweep, Axiom, Schema};
use expertise_core::semantics::{ClauseRule, CompiledFormula};
use expertise_core::validity::{bell, enumerate_models, models_up_to, partitions, EnumerationSpec};
use expertise_core::{ExpertiseModel, StateSet};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn sweep_models() -> Vec<ExpertiseModel> {
    models_up_to(&EnumerationSpec::new(4, ATOMS).unwrap()).unwrap()
}

#[test]
fn enumeration_is_complete_without_duplicates() {
    for n in 1..=4 {
        for k in 0..=2 {
            let atoms: Vec<String> = ["p", "q"][..k].iter().map(|s| s.to_string()).collect();
            let spec = EnumerationSpec::new(n, atoms).unwrap();
            let models: Vec<ExpertiseModel> = enumerate_models(&spec).unwrap().collect();
            let expected = bell(n) << (n * k);
            assert_eq!(models.len() as u128, expected);
            assert_eq!(spec.model_count(), expected);
            let distinct: HashSet<String> = models
                .iter()
                .map(|m| serde_json::to_string(&m.to_json_value()).unwrap())
                .collect();
            assert_eq!(distinct.len(), models.len());
        }
    }
    assert_eq!(sweep_models().len(), 4 + 2 * 16 + 5 * 64 + 15 * 256);
}

#[test]
fn partition_bijection_round_trips() {
    for (n, count) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
        let ps = partitions(n);
        assert_eq!(ps.len(), count);
        for p in &ps {
            let family = expertise_set_from_partition(p);
            assert!(verify_expertise_set(&family, n).unwrap().is_empty());
            assert_eq!(&partition_from_expertise_set(&family, n).unwrap(), p);
            let back =
                expertise_set_from_partition(&partition_from_expertise_set(&family, n).unwrap());
            assert!(back.same_members(&family));
        }
    }
}

/// Every family of subsets of a set of at most four states that satisfies the
/// three laws comes from exactly one partition.
#[test]
fn expertise_sets_are_exactly_partition_families() {
    for n in 1..=4usize {
        let subsets = 1usize << n;
        let mut found = 0;
        for bits in 0u64..(1u64 << subsets) {
            let family = SetFamily::new(
                (0..subsets)
                    .filter(|s| bits >> s & 1 == 1)
                    .map(|s| StateSet::from_mask(n, s as u64))
                    .collect(),
            );
            if !verify_expertise_set(&family, n).unwrap().is_empty() {
                continue;
            }
            found += 1;
            let p = partition_from_expertise_set(&family, n).unwrap();
            assert!(expertise_set_from_partition(&p).same_members(&family));
        }
        assert_eq!(found as u128, bell(n));
    }
}

#[test]
fn membership_is_union_of_blocks() {
    for n in 1..=4 {
        for p in partitions(n) {
            let family = expertise_set_from_partition(&p);
            for mask in 0..(1u64 << n) {
                let a = StateSet::from_mask(n, mask);
                assert_eq!(family.contains(&a), p.is_union_of_blocks(&a), "{p:?} {a:?}");
            }
        }
    }
}

#[test]
fn basic_validities_hold_on_every_small_model() {
    let models = sweep_models();
    let c = corpus();
    let mut checks: Vec<Formula> = vec![f("E T"), f("E F")];
    for phi in &c {
        let (p, np) = (phi.to_string(), format!("~({phi})"));
        checks.push(f(&format!("E ({p}) <-> E {np}")));
        checks.push(f(&format!("E ({p}) <-> A E ({p})")));
        checks.push(f(&format!("A E ({p}) | A ~E ({p})")));
        checks.push(f(&format!("E E ({p})")));
        checks.push(f(&format!("{p} -> S ({p})")));
        for psi in &c {
            checks.push(f(&format!("E ({p}) & E ({psi}) -> E (({p}) & ({psi}))")));
        }
    }
    let compiled: Vec<CompiledFormula> = checks.iter().map(CompiledFormula::new).collect();
    for m in &models {
        for (cf, phi) in compiled.iter().zip(&checks) {
            assert!(
                cf.extension(m, ClauseRule::Blocks).unwrap().is_full(),
                "{phi} fails on\n{m}"
            );
        }
    }
}

#[test]
fn expertise_is_state_independent() {
    let models = sweep_models();
    for phi in corpus() {
        let cf = CompiledFormula::new(&Formula::e(phi));
        for m in &models {
            let ext = cf.extension(m, ClauseRule::Blocks).unwrap();
            assert!(ext.is_empty() || ext.is_full());
        }
    }
}

#[test]
fn translation_preserves_truth_in_the_induced_model() {
    let models = sweep_models();
    let c = corpus();
    let pairs: Vec<(CompiledFormula, CompiledFormula)> = c
        .iter()
        .map(|phi| {
            (
                CompiledFormula::new(phi),
                CompiledFormula::new(&translate_t(phi).unwrap()),
            )
        })
        .collect();
    for m in &models {
        let star = to_s5_model(m);
        for (direct, translated) in &pairs {
            assert_eq!(
                direct.extension(m, ClauseRule::Blocks).unwrap(),
                translated.relational_extension(&star).unwrap(),
                "{} on\n{m}",
                direct.formula()
            );
        }
    }
}

#[test]
fn literal_and_block_clauses_agree() {
    let models = sweep_models();
    let c = corpus();
    let mut formulas = c.clone();
    formulas.extend(c.iter().map(|phi| Formula::s(Formula::s(phi.clone()))));
    let compiled: Vec<CompiledFormula> = formulas.iter().map(CompiledFormula::new).collect();
    for m in &models {
        for cf in &compiled {
            assert_eq!(
                cf.extension(m, ClauseRule::Blocks).unwrap(),
                cf.extension(m, ClauseRule::Literal).unwrap(),
                "{} on\n{m}",
                cf.formula()
            );
        }
    }
}

#[test]
fn axioms_are_sound_and_distribution_is_not() {
    let spec = EnumerationSpec::new(4, ATOMS).unwrap();
    let mut schemas = Axiom::all_schemas();
    let report = soundness_sweep(&schemas, &corpus(), &spec).unwrap();
    assert_eq!(report.instances_checked, 2 * 144 + 6 * 12);
    assert!(report.is_clean(), "{:?}", report.violating_schemas());

    schemas.push(Schema::from_text("E-dist", "E (phi -> psi) -> E phi -> E psi").unwrap());
    let report = soundness_sweep(&schemas, &corpus(), &spec).unwrap();
    assert_eq!(report.violating_schemas(), vec!["E-dist"]);
}
