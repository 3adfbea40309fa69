use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dglg::commands::{self, Outcome};
use dglg::suites::Suite;

/// Exact constructions and checks for differential graded Lie algebras and
/// their integrating groups.
#[derive(Parser)]
#[command(name = "dglg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the graded Lie and differential axioms.
    Validate { path: PathBuf },
    /// Build the Chevalley-Eilenberg group and check its Hopf structure and Q.
    Ce {
        path: PathBuf,
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Integrate to a dg Lie group and differentiate back.
    Integrate {
        path: PathBuf,
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Integrate a derivation of a nilpotent Lie algebra to a group 1-cocycle.
    Vanest {
        path: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
    },
    /// Run a named property suite.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Print the canonical form of a spec file.
    Fmt { path: PathBuf },
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome { code: 2, stdout: String::new(), stderr: format!("{}: {e}\n", path.display()) })
}

fn run(cmd: Command) -> Result<Outcome, Outcome> {
    Ok(match cmd {
        Command::Validate { path } => commands::validate(&read(&path)?),
        Command::Ce { path, weight } => commands::ce(&read(&path)?, weight),
        Command::Integrate { path, weight } => commands::integrate(&read(&path)?, weight),
        Command::Vanest { path, derivation } => commands::vanest(&read(&path)?, &read(&derivation)?),
        Command::Check { path, suite, weight } => commands::check(&read(&path)?, suite, weight),
        Command::Fmt { path } => commands::fmt(&read(&path)?),
    })
}

fn main() -> ExitCode {
    let out = run(Cli::parse().command).unwrap_or_else(|o| o);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
