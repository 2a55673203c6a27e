//! `galqm`: batch front end for the finite-field quantum toolkit.

mod cmd;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliResult;
use output::Render;

#[derive(Debug, Parser)]
#[command(name = "galqm", version, about = "Exact quantum-like mechanics over GF(q)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Field characteristic (prime).
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Extension degree; the field has p^n elements.
    #[arg(long, global = true, default_value_t = 1)]
    n: u32,
    /// Single-particle dimension.
    #[arg(long = "N", global = true, default_value_t = 2)]
    dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run even when a scale guard would refuse.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field modulus and, for q <= 16, addition and multiplication tables.
    Field,
    /// Projective single-particle states, or two-party states with --two-party.
    States {
        #[arg(long)]
        two_party: bool,
    },
    /// Joint probability tables of a two-party state for every pair of spins.
    Table(cmd::StateArgs),
    /// Exhaustive CHSH correlator sweep.
    Chsh(cmd::ChshArgs),
    /// Local hidden-variable feasibility of a family of joint tables.
    Hv(cmd::HvArgs),
    /// Orbits of two-party states under local basis changes.
    Orbits {
        /// Close under every local map instead of a generating set.
        #[arg(long)]
        exhaustive: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    let report: Box<dyn Render> = match &cli.command {
        Command::Field => Box::new(cmd::field(g)?),
        Command::States { two_party } => Box::new(cmd::states(g, *two_party)?),
        Command::Table(args) => Box::new(cmd::table(g, args)?),
        Command::Chsh(args) => Box::new(cmd::chsh(g, args)?),
        Command::Hv(args) => cmd::hv(g, args)?,
        Command::Orbits { exhaustive } => Box::new(cmd::orbits(g, *exhaustive)?),
    };
    let text = match g.format {
        Format::Json => report.json()?,
        Format::Csv => report.csv()?,
        Format::Text => report.text(),
    };
    output::emit(&text, g.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("galqm: {e}");
            e.exit_code()
        }
    }
}
