//! `recoll`: build a recollement from a scenario file and verify it, or
//! evaluate one functor on one test object.
//!
//! Exit codes: 0 all cells pass, 1 some cell fails, 2 no failures but some
//! isomorphism could not be certified, 3 the scenario is invalid.

mod report;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scenario::Scenario;

#[derive(Parser)]
#[command(name = "recoll", version, about = "Verify recollements and their reflections over GF(p)")]
struct Cli {
    /// Write the structured report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Suppress the text summary.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the original and reflected recollements of a scenario.
    Verify { file: PathBuf },
    /// Print the homology dimensions of a functor applied to a menu object.
    Apply { file: PathBuf, functor: String, object: String },
}

const INVALID: u8 = 3;

fn load(path: &Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Scenario::parse(&text)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Verify { file } => {
            let s = load(&file)?;
            let rep = report::verify(&s).map_err(|e| format!("invalid scenario: {e}"))?;
            if let Some(path) = &cli.report {
                std::fs::write(path, rep.to_json()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            if !cli.quiet {
                print!("{}", rep.text());
            }
            Ok(rep.exit_code() as u8)
        }
        Command::Apply { file, functor, object } => {
            let s = load(&file)?;
            let out = report::apply(&s, &functor, &object).map_err(|e| format!("{e}"))?;
            println!("{out}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(INVALID)
        }
    }
}
