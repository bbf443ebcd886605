use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use expertise_core::corpus::{self, ATOMS};
use expertise_core::formula::{embed_g, parse, translate_t, Formula};
use expertise_core::model::to_s5_model;
use expertise_core::proofs::{
    check_derivation, describe_substitution, parse_proof, soundness_sweep, Axiom, DerivationError,
    Schema, SweepReport,
};
use expertise_core::semantics::{check_correspondence, eval_named, extension, Correspondence};
use expertise_core::validity::{
    check_equivalence, default_max_states, find_countermodel, EnumerationSpec, Verdict,
};
use expertise_core::ExpertiseModel;

use crate::{Cli, Command, GlobalOpts};

/// Result of a successful run: whether the checked property held.
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    fn from_bool(holds: bool) -> Outcome {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Outcome::Holds => ExitCode::SUCCESS,
            Outcome::Fails => ExitCode::from(1),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.global;
    if let Some(jobs) = opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("cannot configure worker threads")?;
    }
    match &cli.command {
        Command::Eval {
            model,
            formula,
            state,
        } => eval(opts, model, formula, state.as_deref()),
        Command::Extension { model, formula } => ext(opts, model, formula),
        Command::Translate { formula } => translate(opts, formula),
        Command::ToS5 { model } => to_s5(opts, model),
        Command::Correspondence { model, formula } => correspondence(opts, model, formula),
        Command::Countermodel { formula } => {
            let f = parse_formula(formula)?;
            let spec = bound(opts, &f)?;
            let verdict = find_countermodel(&f, &spec)?;
            print_verdict(opts, &verdict)
        }
        Command::Equiv { left, right } => {
            let (l, r) = (parse_formula(left)?, parse_formula(right)?);
            let spec = bound(opts, &Formula::and(l.clone(), r.clone()))?;
            let verdict = check_equivalence(&l, &r, &spec)?;
            print_verdict(opts, &verdict)
        }
        Command::CheckProof { proof } => check_proof(opts, proof),
        Command::SoundnessSweep { schemas, no_axioms } => sweep(opts, schemas, *no_axioms),
    }
}

fn parse_formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("cannot parse formula `{text}`"))
}

fn load_model(path: &Path) -> Result<ExpertiseModel> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ExpertiseModel::from_json_str(&text)
        .with_context(|| format!("invalid model file {}", path.display()))
}

/// Loads the model and parses the formula, warning about atoms the model
/// does not interpret.
fn model_and_formula(path: &Path, text: &str) -> Result<(ExpertiseModel, Formula)> {
    let model = load_model(path)?;
    let f = parse_formula(text)?;
    for atom in f.atoms() {
        if !model.valuation().contains_key(&atom) {
            eprintln!("warning: atom `{atom}` is not in the valuation; it is false everywhere");
        }
    }
    Ok((model, f))
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON serializes")
    );
}

fn names(model: &ExpertiseModel, set: &expertise_core::StateSet) -> Vec<String> {
    model.set_names(set).into_iter().map(String::from).collect()
}

fn blocks_json(model: &ExpertiseModel) -> Value {
    json!(model
        .partition()
        .blocks()
        .iter()
        .map(|b| names(model, b))
        .collect::<Vec<_>>())
}

fn blocks_text(model: &ExpertiseModel) -> String {
    model
        .partition()
        .blocks()
        .iter()
        .map(|b| model.format_set(b))
        .collect::<Vec<_>>()
        .join(" ")
}

fn eval(opts: &GlobalOpts, path: &Path, text: &str, state: Option<&str>) -> Result<Outcome> {
    let (model, f) = model_and_formula(path, text)?;
    match state {
        Some(state) => {
            let value = eval_named(&model, state, &f)?;
            if opts.json {
                emit(&json!({ "formula": f.to_string(), "state": state, "value": value }));
            } else {
                println!("{value}");
            }
            Ok(Outcome::from_bool(value))
        }
        None => {
            let ext = extension(&model, &f)?;
            let global = ext.is_global();
            if opts.json {
                emit(&json!({
                    "formula": f.to_string(),
                    "extension": names(&model, &ext.states),
                    "globally_true": global,
                }));
            } else {
                println!("extension: {}", model.format_set(&ext.states));
                println!("globally {}", if global { "true" } else { "false" });
            }
            Ok(Outcome::from_bool(global))
        }
    }
}

fn ext(opts: &GlobalOpts, path: &Path, text: &str) -> Result<Outcome> {
    let (model, f) = model_and_formula(path, text)?;
    let ext = extension(&model, &f)?;
    if opts.json {
        emit(&json!({ "formula": f.to_string(), "extension": names(&model, &ext.states) }));
    } else {
        println!("{}", model.format_set(&ext.states));
    }
    Ok(Outcome::Holds)
}

fn translate(opts: &GlobalOpts, text: &str) -> Result<Outcome> {
    let f = parse_formula(text)?;
    let t = translate_t(&f)?;
    let g = embed_g(&f)?;
    if opts.json {
        emit(&json!({ "formula": f.to_string(), "t": t.to_string(), "g": g.to_string() }));
    } else {
        println!("t: {t}");
        println!("g: {g}");
    }
    Ok(Outcome::Holds)
}

fn to_s5(opts: &GlobalOpts, path: &Path) -> Result<Outcome> {
    let model = load_model(path)?;
    let star = to_s5_model(&model);
    let state = |i: usize| model.states()[i].clone();
    let pairs = star.pairs();
    if opts.json {
        let valuation: serde_json::Map<String, Value> = model
            .valuation()
            .iter()
            .map(|(a, s)| (a.clone(), json!(names(&model, s))))
            .collect();
        emit(&json!({
            "states": model.states(),
            "classes": blocks_json(&model),
            "relation": pairs.iter().map(|&(x, y)| [state(x), state(y)]).collect::<Vec<_>>(),
            "valuation": valuation,
        }));
    } else {
        println!("states: {}", model.states().join(", "));
        println!("classes: {}", blocks_text(&model));
        let rel: Vec<String> = pairs
            .iter()
            .map(|&(x, y)| format!("({}, {})", state(x), state(y)))
            .collect();
        println!("relation: {}", rel.join(" "));
        for (atom, set) in model.valuation() {
            println!("v({atom}) = {}", model.format_set(set));
        }
    }
    Ok(Outcome::Holds)
}

fn correspondence(opts: &GlobalOpts, path: &Path, text: &str) -> Result<Outcome> {
    let (model, f) = model_and_formula(path, text)?;
    let t = translate_t(&f)?;
    let result = check_correspondence(&model, &f)?;
    let agree = result == Correspondence::Agree;
    if opts.json {
        let mut report = json!({
            "formula": f.to_string(),
            "translation": t.to_string(),
            "status": if agree { "ok" } else { "mismatch" },
            "classes": blocks_json(&model),
        });
        if let Correspondence::Mismatch {
            state,
            expertise,
            relational,
        } = result
        {
            report["mismatch"] = json!({
                "state": model.states()[state],
                "expertise": expertise,
                "relational": relational,
            });
        }
        emit(&report);
    } else {
        match result {
            Correspondence::Agree => println!("ok: {f} and {t} agree at every state"),
            Correspondence::Mismatch {
                state,
                expertise,
                relational,
            } => println!(
                "mismatch at {}: {expertise} in the expertise model, {relational} in the induced S5 model",
                model.states()[state]
            ),
        }
        println!("classes: {}", blocks_text(&model));
    }
    Ok(Outcome::from_bool(agree))
}

/// The search bound from the global flags, defaulting to the formula's atoms
/// and the default state bound for that many atoms.
fn bound(opts: &GlobalOpts, f: &Formula) -> Result<EnumerationSpec> {
    let atoms: Vec<String> = match &opts.atoms {
        Some(list) => list
            .iter()
            .map(|a| a.trim().to_string())
            .filter(|a| !a.is_empty())
            .collect(),
        None => f.atoms().into_iter().collect(),
    };
    let n = opts
        .max_states
        .unwrap_or_else(|| default_max_states(atoms.len()));
    Ok(EnumerationSpec::new(n, atoms)?)
}

fn at_most(n: usize) -> String {
    format!("at most {n} state{}", if n == 1 { "" } else { "s" })
}

fn print_verdict(opts: &GlobalOpts, verdict: &Verdict) -> Result<Outcome> {
    if opts.json {
        emit(&verdict.to_json(opts.timing));
    } else {
        let atoms = if verdict.atoms().is_empty() {
            "none".to_string()
        } else {
            verdict.atoms().join(", ")
        };
        println!("formula: {}", verdict.formula());
        println!("bound: {}, atoms {atoms}", at_most(verdict.max_states()));
        println!("result: {}", verdict.summary());
        println!(
            "models checked: {} of {}",
            verdict.models_checked(),
            verdict.models_total()
        );
        if let Some(w) = verdict.witness() {
            println!("witness:");
            for line in w.model.to_string().lines() {
                println!("  {line}");
            }
        }
        if opts.timing {
            println!("time: {:.1} ms", verdict.elapsed().as_secs_f64() * 1e3);
        }
    }
    Ok(Outcome::from_bool(!verdict.is_countermodel()))
}

fn check_proof(opts: &GlobalOpts, path: &Path) -> Result<Outcome> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let derivation = parse_proof(&text).with_context(|| format!("in {}", path.display()))?;
    let result = check_derivation(&derivation);
    if opts.json {
        let report = match &result {
            Ok(theorem) => json!({
                "status": "ok",
                "theorem": theorem.to_string(),
                "steps": derivation.steps.len(),
            }),
            Err(DerivationError::BadStep { index, fault }) => json!({
                "status": "bad",
                "step": index,
                "reason": fault.to_string(),
            }),
            Err(e) => bail!("{e}"),
        };
        emit(&report);
    } else {
        match &result {
            Ok(theorem) => println!("ok: {theorem} ({} steps)", derivation.steps.len()),
            Err(e @ DerivationError::BadStep { .. }) => println!("{e}"),
            Err(e) => bail!("{e}"),
        }
    }
    Ok(Outcome::from_bool(result.is_ok()))
}

fn parse_schema(spec: &str) -> Result<Schema> {
    let (name, template) = spec
        .split_once('=')
        .with_context(|| format!("expected NAME=TEMPLATE, found `{spec}`"))?;
    Schema::from_text(name.trim(), template.trim())
        .with_context(|| format!("cannot parse schema `{}`", name.trim()))
}

fn sweep(opts: &GlobalOpts, extra: &[String], no_axioms: bool) -> Result<Outcome> {
    let mut schemas = if no_axioms {
        Vec::new()
    } else {
        Axiom::all_schemas()
    };
    for s in extra {
        schemas.push(parse_schema(s)?);
    }
    if schemas.is_empty() {
        bail!("no schemas to check");
    }
    let atoms: Vec<String> = opts
        .atoms
        .clone()
        .unwrap_or_else(|| ATOMS.iter().map(|a| a.to_string()).collect());
    let spec = EnumerationSpec::new(opts.max_states.unwrap_or(4), atoms)?;
    let start = std::time::Instant::now();
    let report = soundness_sweep(&schemas, &corpus::corpus(), &spec)?;
    let elapsed = start.elapsed();
    if opts.json {
        let mut value = sweep_json(&report);
        if opts.timing {
            value["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1e3);
        }
        emit(&value);
    } else {
        println!("schemas: {}", report.schemas.join(", "));
        println!(
            "corpus: {} formulas; bound: {}, atoms {} ({} models)",
            corpus::TEMPLATES.len(),
            at_most(report.max_states),
            report.atoms.join(", "),
            report.models_checked
        );
        println!("instances checked: {}", report.instances_checked);
        if report.is_clean() {
            println!("violations: none");
        } else {
            println!("violations: {}", report.violations.len());
            for v in &report.violations {
                println!(
                    "  {} [{}]: {}",
                    v.instance.schema,
                    describe_substitution(&v.instance.substitution),
                    v.verdict.summary()
                );
            }
        }
        if opts.timing {
            println!("time: {:.1} ms", elapsed.as_secs_f64() * 1e3);
        }
    }
    Ok(Outcome::from_bool(report.is_clean()))
}

fn sweep_json(report: &SweepReport) -> Value {
    json!({
        "schemas": report.schemas,
        "corpus": corpus::TEMPLATES,
        "bound": { "max_states": report.max_states, "atoms": report.atoms },
        "models_checked": report.models_checked,
        "instances_checked": report.instances_checked,
        "violations": report.violations.iter().map(|v| json!({
            "schema": v.instance.schema,
            "substitution": describe_substitution(&v.instance.substitution),
            "instance": v.instance.formula.to_string(),
            "countermodel": v.verdict.to_json(false),
        })).collect::<Vec<_>>(),
    })
}
