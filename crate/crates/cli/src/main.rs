//! `toppling`: command-line front-end. Writes a JSON report to stdout and a
//! one-line summary to stderr.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "toppling", version, about = "Chip-firing ideals, resolutions and Riemann-Roch checks")]
struct Cli {
    /// Swap node <SINK> with node n before any graph analysis.
    #[arg(long, global = true, value_name = "SINK")]
    sink: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IdealKind {
    Parking,
    Toppling,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic invariants: size, genus, saturation, tree count, sandpile group.
    Info { graph: PathBuf },
    /// Toppling ideal generators and the parking-function ideal.
    Ideal { graph: PathBuf },
    /// Socle of the parking ideal and the flag formula cross-check.
    Socle { graph: PathBuf },
    /// Graded Betti numbers from the homology of labeled complexes.
    Betti {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "parking")]
        ideal: IdealKind,
        /// Field characteristic: 0 or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Compares parking and toppling homology class by class.
    Conjecture {
        graph: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Hilbert series identity for a saturated graph.
    Hilbert { graph: PathBuf },
    /// Rank of a divisor, with the Baker-Norine check.
    Rank {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "CSV")]
        divisor: String,
    },
    /// Rank of a monomial with respect to an artinian monomial ideal.
    Mrank {
        ideal: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "CSV")]
        monomial: String,
    },
    /// Riemann-Roch profile of a monomial ideal, optionally checked at given monomials.
    Rrcheck {
        ideal: PathBuf,
        #[arg(long = "b", allow_hyphen_values = true, value_name = "CSV")]
        b: Vec<String>,
    },
    /// Builds a Riemann-Roch ideal from a canonical monomial and socle seeds.
    Construct {
        #[arg(long, value_name = "CSV")]
        canonical: String,
        #[arg(long = "seed", value_name = "CSV", required = true)]
        seeds: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Ideal { .. } => "ideal",
            Command::Socle { .. } => "socle",
            Command::Betti { .. } => "betti",
            Command::Conjecture { .. } => "conjecture",
            Command::Hilbert { .. } => "hilbert",
            Command::Rank { .. } => "rank",
            Command::Mrank { .. } => "mrank",
            Command::Rrcheck { .. } => "rrcheck",
            Command::Construct { .. } => "construct",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = Report::failure("usage", serde_json::Value::Null, &e.kind().to_string());
            println!("{}", report.to_json());
            return ExitCode::from(1);
        }
    };
    let name = cli.command.name();
    let report = match commands::run(&cli) {
        Ok(report) => report,
        Err(e) => Report::failure(name, commands::echo_inputs(&cli), &e.to_string()),
    };
    println!("{}", report.to_json());
    eprintln!("{}", report.summary());
    ExitCode::from(report.exit_code())
}
