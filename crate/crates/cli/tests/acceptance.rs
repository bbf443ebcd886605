//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

use expertise_core::corpus::{corpus, ATOMS};
use expertise_core::formula::{parse, translate_t, Formula};
use expertise_core::model::{
    expertise_set_from_partition, partition_from_expertise_set, to_s5_model, verify_expertise_set,
};
use expertise_core::proofs::{check_derivation, parse_proof, DerivationError};
use expertise_core::semantics::{extension, ClauseRule, CompiledFormula};
use expertise_core::validity::{models_up_to, partitions, EnumerationSpec};
use expertise_core::{ExpertiseModel, StateSet};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expertise"))
        .args(args)
        .output()
        .expect("run the expertise binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_of(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON output: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(s: &str) -> Formula {
    parse(s).expect("test formula parses")
}

fn load(name: &str) -> ExpertiseModel {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    ExpertiseModel::from_json_str(&text).expect("fixture is a valid model")
}

fn sweep_models() -> Vec<ExpertiseModel> {
    models_up_to(&EnumerationSpec::new(4, ATOMS).unwrap()).unwrap()
}

fn economist() -> Check {
    let model = fixture("economist.json");
    let model = model.to_str().unwrap();
    let out = cli(&["eval", model, "E r", "--json"]);
    let v = json_of(&out)?;
    ensure(
        v["globally_true"] == true && out.status.code() == Some(0),
        || format!("E r not globally true: {v}"),
    )?;
    let out = cli(&["eval", model, "S (r & p)", "--state", "c"]);
    ensure(
        stdout(&out).trim() == "true" && out.status.code() == Some(0),
        || format!("S (r & p) at c: {}", stdout(&out)),
    )?;
    let out = cli(&["eval", model, "r & p", "--state", "c"]);
    ensure(
        stdout(&out).trim() == "false" && out.status.code() == Some(1),
        || format!("r & p at c: {}", stdout(&out)),
    )?;
    let v = json_of(&cli(&["extension", model, "r & p", "--json"]))?;
    ensure(v["extension"] == serde_json::json!(["a"]), || {
        format!("||r & p|| = {}", v["extension"])
    })?;
    Ok("E r global, S (r & p) true at c, r & p false at c, ||r & p|| = {a}".into())
}

fn distribution() -> Check {
    let out = cli(&[
        "countermodel",
        "E(p -> q) -> (E p -> E q)",
        "--max-states",
        "3",
        "--json",
    ]);
    let v = json_of(&out)?;
    ensure(
        v["status"] == "countermodel-found" && out.status.code() == Some(1),
        || format!("search result: {v}"),
    )?;
    let witness = serde_json::to_string(&v["witness"]["model"]).unwrap();
    let w = ExpertiseModel::from_json_str(&witness).map_err(|e| e.to_string())?;
    let state = v["witness"]["state"].as_str().unwrap_or_default();
    let phi = f("E(p -> q) -> (E p -> E q)");
    ensure(
        !expertise_core::semantics::eval_named(&w, state, &phi).map_err(|e| e.to_string())?,
        || "witness does not falsify the formula".into(),
    )?;

    let m = load("distribution.json");
    let p_set = m.set_from_names(["a"]).unwrap();
    let q_set = m.set_from_names(["b"]).unwrap();
    let pq_set = m.set_from_names(["b", "c"]).unwrap();
    let family = m.expertise_set();
    ensure(
        family.contains(&p_set) && !family.contains(&q_set) && family.contains(&pq_set),
        || "distribution model memberships differ".into(),
    )?;
    ensure(
        extension(&m, &f("p -> q")).unwrap().states == pq_set,
        || "||p -> q|| != {b, c}".into(),
    )?;
    let ext = extension(&m, &phi).map_err(|e| e.to_string())?;
    ensure(ext.states.is_empty(), || {
        format!("formula true at {:?}", ext.state_names())
    })?;
    Ok(format!(
        "search: {}; fixture: false at a, b, c",
        v["message"].as_str().unwrap_or_default()
    ))
}

fn basic_validities() -> Check {
    let models = sweep_models();
    let four_state = models.iter().filter(|m| m.n_states() == 4).count();
    ensure(four_state == 3840, || {
        format!("{four_state} four-state models")
    })?;
    let c = corpus();
    let mut checks = vec![f("E T"), f("E F")];
    for phi in &c {
        let p = phi.to_string();
        checks.push(f(&format!("E ({p}) <-> E ~({p})")));
        checks.push(f(&format!("E ({p}) <-> A E ({p})")));
        checks.push(f(&format!("A E ({p}) | A ~E ({p})")));
        checks.push(f(&format!("E E ({p})")));
        checks.push(f(&format!("{p} -> S ({p})")));
        for psi in &c {
            checks.push(f(&format!("E ({p}) & E ({psi}) -> E (({p}) & ({psi}))")));
        }
    }
    let compiled: Vec<CompiledFormula> = checks.iter().map(CompiledFormula::new).collect();
    let mut violations = 0;
    for m in &models {
        for cf in &compiled {
            if !cf.extension(m, ClauseRule::Blocks).unwrap().is_full() {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!(
        "{} models (3840 with 4 states) x {} instances over {} corpus formulas, 0 violations",
        models.len(),
        checks.len(),
        c.len()
    ))
}

fn correspondence() -> Check {
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
    let mut mismatches = 0;
    for m in &models {
        let star = to_s5_model(m);
        for (direct, translated) in &pairs {
            if direct.extension(m, ClauseRule::Blocks).unwrap()
                != translated.relational_extension(&star).unwrap()
            {
                mismatches += 1;
            }
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok(format!(
        "{} models x {} formulas, 0 mismatches",
        models.len(),
        c.len()
    ))
}

fn bijection() -> Check {
    let mut count = 0;
    for n in 1..=5 {
        for p in partitions(n) {
            count += 1;
            let family = expertise_set_from_partition(&p);
            ensure(verify_expertise_set(&family, n).unwrap().is_empty(), || {
                format!("{p:?} gives no expertise set")
            })?;
            let back = partition_from_expertise_set(&family, n).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("{p:?} round trip gives {back:?}"))?;
            ensure(
                expertise_set_from_partition(&back).same_members(&family),
                || format!("expertise set of {p:?} does not round trip"),
            )?;
        }
    }
    ensure(partitions(5).len() == 52, || {
        "wrong number of partitions at n = 5".into()
    })?;
    let mut subsets = 0;
    for n in 1..=4 {
        for p in partitions(n) {
            let family = expertise_set_from_partition(&p);
            for mask in 0..(1u64 << n) {
                subsets += 1;
                let a = StateSet::from_mask(n, mask);
                ensure(family.contains(&a) == p.is_union_of_blocks(&a), || {
                    format!("membership of {a:?} in {p:?}")
                })?;
            }
        }
    }
    Ok(format!(
        "{count} partitions round trip; membership exact on {subsets} (partition, subset) pairs"
    ))
}

fn soundness() -> Check {
    let out = cli(&["soundness-sweep", "--json"]);
    let v = json_of(&out)?;
    let n = v["violations"].as_array().map_or(usize::MAX, Vec::len);
    ensure(n == 0 && out.status.code() == Some(0), || {
        format!("{n} violations among the axioms")
    })?;
    let instances = v["instances_checked"].clone();

    let out = cli(&[
        "soundness-sweep",
        "--no-axioms",
        "--schema",
        "E-dist=E (phi -> psi) -> E phi -> E psi",
        "--json",
    ]);
    let v = json_of(&out)?;
    let flagged = v["violations"].as_array().map_or(0, Vec::len);
    ensure(flagged > 0 && out.status.code() == Some(1), || {
        "E-distribution not flagged".into()
    })?;
    Ok(format!(
        "8 schemas, {instances} instances, {} models: 0 violations; E-distribution flagged on {flagged} instances",
        v["models_checked"]
    ))
}

fn equivalences() -> Check {
    let mut messages = Vec::new();
    for (l, r) in [("E p", "A (S p -> p)"), ("~E p", "A^ (S p & ~p)")] {
        let out = cli(&["equiv", l, r, "--json"]);
        let v = json_of(&out)?;
        ensure(
            v["status"] == "valid-up-to-bound"
                && v["bound"]["max_states"] == 4
                && out.status.code() == Some(0),
            || format!("{l} vs {r}: {v}"),
        )?;
        messages.push(format!(
            "{l} == {r}: {}",
            v["message"].as_str().unwrap_or_default()
        ));
    }
    Ok(messages.join("; "))
}

/// (file, step, replacement line, expected bad step)
const MUTATIONS: [(&str, usize, &str, usize); 20] = [
    (
        "nec_shat.prf",
        3,
        "3. A (p -> p) -> ~S ~(p -> p) ; axiom T_A",
        3,
    ),
    ("nec_shat.prf", 1, "1. p -> q ; taut", 1),
    ("nec_shat.prf", 2, "2. A (q -> q) ; necA 1", 2),
    ("nec_shat.prf", 4, "4. ~S ~(p -> p) ; mp 3 2", 4),
    ("nec_shat.prf", 4, "4. S ~(p -> p) ; mp 2 3", 4),
    ("nec_shat.prf", 2, "2. A (p -> p) ; necA 2", 2),
    ("nec_shat.prf", 3, "3. A (p -> p) -> ~S ~(p -> p) ; taut", 3),
    ("nec_shat.prf", 4, "4. ~S ~(p -> p) ; mp 1 3", 4),
    ("nec_shat.prf", 2, "2. A (p -> p) ; rs 1", 2),
    ("nec_shat.prf", 4, "4. ~S ~(p -> p) ; mp 2 5", 4),
    ("shat_t.prf", 1, "1. ~p -> S ~p ; axiom T_A", 1),
    (
        "shat_t.prf",
        2,
        "2. (~p -> S ~p) -> (~S ~p -> ~p) ; taut",
        2,
    ),
    ("shat_t.prf", 3, "3. ~S ~p -> p ; mp 2 1", 3),
    ("shat_5.prf", 2, "2. S ~~~S ~p <-> S ~S ~~p ; rs 1", 2),
    ("shat_5.prf", 3, "3. S ~S ~p -> ~S ~p ; axiom 5_A", 3),
    (
        "shat_5.prf",
        5,
        "5. (S ~S ~p -> ~S ~p) -> ~~S ~p -> ~S ~~~S ~p ; mp 1 4",
        5,
    ),
    ("shat_5.prf", 6, "6. ~~S ~p -> ~S ~~~S ~p ; necA 5", 6),
    (
        "shat_k.prf",
        3,
        "3. S ~q & ~S ~p -> S (~q & ~~p) ; axiom K_A",
        3,
    ),
    ("shat_k.prf", 1, "1. ~q & ~p <-> ~(p -> q) ; taut", 1),
    (
        "shat_k.prf",
        6,
        "6. ~S ~(p -> q) -> ~S ~q -> ~S ~p ; mp 3 5",
        6,
    ),
];

fn mutate(text: &str, step: usize, line: &str) -> String {
    let prefix = format!("{step}. ");
    text.lines()
        .map(|l| if l.starts_with(&prefix) { line } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn proof_checker() -> Check {
    for file in ["nec_shat.prf", "shat_t.prf", "shat_5.prf", "shat_k.prf"] {
        let out = cli(&["check-proof", fixture(file).to_str().unwrap()]);
        ensure(out.status.code() == Some(0), || {
            format!("{file}: {}", stdout(&out))
        })?;
    }
    for (i, (file, step, line, expected)) in MUTATIONS.iter().enumerate() {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        let mutated = mutate(&text, *step, line);
        ensure(mutated != text, || {
            format!("mutation {} changed nothing", i + 1)
        })?;
        let d = parse_proof(&mutated).map_err(|e| format!("mutation {}: {e}", i + 1))?;
        match check_derivation(&d) {
            Err(DerivationError::BadStep { index, .. }) if index == *expected => {}
            other => {
                return Err(format!(
                    "mutation {} of {file}: expected bad step {expected}, got {other:?}",
                    i + 1
                ))
            }
        }
    }
    let dir = std::env::temp_dir().join(format!("expertise-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mutated = dir.join("mutated.prf");
    let text = std::fs::read_to_string(fixture("nec_shat.prf")).unwrap();
    std::fs::write(&mutated, mutate(&text, MUTATIONS[0].1, MUTATIONS[0].2)).unwrap();
    let out = cli(&["check-proof", mutated.to_str().unwrap()]);
    ensure(
        out.status.code() == Some(1) && stdout(&out).starts_with("bad step 3: schema mismatch"),
        || format!("mutated copy via the CLI: {}", stdout(&out)),
    )?;
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!(
        "necessitation for the dual of S checks; {}/20 mutations rejected at the mutated step",
        MUTATIONS.len()
    ))
}

fn dual_path() -> Check {
    let models = sweep_models();
    let c = corpus();
    let mut formulas = c.clone();
    formulas.extend(c.iter().map(|phi| Formula::s(Formula::s(phi.clone()))));
    formulas.extend(c.iter().map(|phi| Formula::s(Formula::e(phi.clone()))));
    let compiled: Vec<CompiledFormula> = formulas.iter().map(CompiledFormula::new).collect();
    let mut mismatches = 0;
    let mut evaluations = 0usize;
    for m in &models {
        for cf in &compiled {
            let blocks = cf.extension(m, ClauseRule::Blocks).unwrap();
            let literal = cf.extension(m, ClauseRule::Literal).unwrap();
            mismatches += blocks
                .difference(&literal)
                .union(&literal.difference(&blocks))
                .count();
            evaluations += m.n_states();
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} mismatching (model, state, formula) triples")
    })?;
    Ok(format!(
        "{evaluations} (model, state, formula) triples over {} formulas, 0 mismatches",
        formulas.len()
    ))
}

fn determinism() -> Check {
    let args = [
        "countermodel",
        "E(p -> q) -> (E p -> E q)",
        "--max-states",
        "3",
        "--json",
    ];
    let runs: Vec<Vec<u8>> = [None, Some("1"), Some("4"), Some("4")]
        .iter()
        .map(|jobs| {
            let mut a: Vec<&str> = args.to_vec();
            if let Some(j) = jobs {
                a.extend(["--jobs", j]);
            }
            cli(&a).stdout
        })
        .collect();
    ensure(!runs[0].is_empty(), || "no output".into())?;
    ensure(runs.iter().all(|r| r == &runs[0]), || {
        "JSON reports differ between runs".into()
    })?;
    Ok(format!(
        "{} runs (default, 1, 4 and 4 threads) byte-identical",
        runs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("economist model", economist, Duration::from_secs(1)),
        (
            "distribution countermodel",
            distribution,
            Duration::from_secs(1),
        ),
        (
            "basic validities sweep",
            basic_validities,
            Duration::from_secs(30),
        ),
        (
            "translation correspondence",
            correspondence,
            Duration::from_secs(60),
        ),
        (
            "partition bijection and membership",
            bijection,
            Duration::from_secs(5),
        ),
        ("axiom soundness sweep", soundness, Duration::from_secs(60)),
        (
            "E and S equivalences",
            equivalences,
            Duration::from_secs(10),
        ),
        ("proof checker", proof_checker, Duration::MAX),
        (
            "literal and block S clauses agree",
            dual_path,
            Duration::MAX,
        ),
        ("deterministic witnesses", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *limit => Err(format!(
                "{detail}; took {:.2} s, limit {} s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "PASS  {:>2}. {name} ({:.2} s): {detail}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL  {:>2}. {name} ({:.2} s): {why}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
