mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Model checker, bounded countermodel search and proof checker for the
/// logic of expertise and soundness.
///
/// Exit codes: `eval` exits 0 when the formula is true (at the given state,
/// or globally), 1 when it is false. `countermodel` and `equiv` exit 0 when
/// no countermodel exists within the bound and 1 when one is found.
/// `check-proof` exits 0 for a correct derivation and 1 for a bad step.
/// `correspondence` and `soundness-sweep` exit 1 on a mismatch or
/// violation. Errors (unreadable files, parse errors, empty proofs) exit 2.
#[derive(Debug, Parser)]
#[command(name = "expertise", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest model size to search (default: 4, fewer for formulas with many atoms).
    #[arg(long, global = true, value_name = "N")]
    pub max_states: Option<usize>,
    /// Atoms the valuation ranges over, comma separated (default: the formula's atoms).
    #[arg(long, global = true, value_name = "LIST", value_delimiter = ',')]
    pub atoms: Option<Vec<String>>,
    /// Number of worker threads for model searches.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Report wall time (omitted by default so reports are reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula in a model, at one state or at all of them.
    Eval {
        model: PathBuf,
        formula: String,
        /// State to evaluate at; without it the extension is printed.
        #[arg(long)]
        state: Option<String>,
    },
    /// Print the set of states where a formula holds.
    Extension { model: PathBuf, formula: String },
    /// Print the translation into the knowledge language and the E-free embedding.
    Translate { formula: String },
    /// Print the induced S5 model of an expertise model.
    ToS5 { model: PathBuf },
    /// Compare a formula with its translation in the induced S5 model.
    Correspondence { model: PathBuf, formula: String },
    /// Search all small models for one falsifying the formula.
    Countermodel { formula: String },
    /// Search all small models for one separating two formulas.
    Equiv { left: String, right: String },
    /// Check a derivation file.
    CheckProof { proof: PathBuf },
    /// Check every axiom instance over the built-in corpus on all small models.
    SoundnessSweep {
        /// Additional schema to check, as NAME=TEMPLATE over `phi` and `psi`.
        #[arg(long = "schema", value_name = "NAME=TEMPLATE")]
        schemas: Vec<String>,
        /// Check only the extra schemas, not the eight axioms.
        #[arg(long)]
        no_axioms: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
