use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cy3_core::problem::parse_problem;
use cy3_core::report::{render_text, run, Command, RunOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Classify every matrix of the problem file.
    Classify,
    /// Split the cubic in the eigenframe of an infinite-order symmetry.
    Factor,
    /// Decide whether the symmetry group is finite or almost abelian of rank 1.
    Analyze,
    /// List all symmetries with entries in [-bound, bound].
    Enumerate,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Classify => Command::Classify,
            Cmd::Factor => Command::Factor,
            Cmd::Analyze => Command::Analyze,
            Cmd::Enumerate => Command::Enumerate,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

/// Symmetries of a ternary cubic form and a linear form on Z^3.
#[derive(Debug, Parser)]
#[command(name = "cy3", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Entry bound for enumeration; overrides the file.
    #[arg(long)]
    bound: Option<u32>,
    /// Accept bounds above 6.
    #[arg(long)]
    allow_large_bound: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cy3: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(1);
        }
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cy3: {}: {e}", cli.input.display());
            return ExitCode::from(1);
        }
    };
    let options = RunOptions {
        bound: cli.bound,
        allow_large_bound: cli.allow_large_bound,
    };
    let report = run(&problem, cli.command.into(), options);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", render_text(&report)),
    }
    ExitCode::from(report.exit_code() as u8)
}
