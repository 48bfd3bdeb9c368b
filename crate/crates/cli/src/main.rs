use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stuffle_cli::commands::{self, parse_family, CliError, CliResult, Output};
use stuffle_cli::verify::verify;
use stuffle_core::numerics::{EvalConfig, MAX_PRECISION};

#[derive(Parser)]
#[command(name = "stuffle", version, about = "Harmonic sums, alternating Euler sums and their relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Target absolute error for numerical evaluation.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = MAX_PRECISION - 1)]
    precision: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Expand S(n;...) into Euler sums.
    Expand { expr: String },
    /// Closed form of S(n;...) or z(...) in terms of classical constants.
    Reduce { expr: String },
    /// Numerical value with an error bound.
    Eval { expr: String },
    /// Run the fixture tables and checks; exits 1 on any failure.
    Verify {
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long)]
        level: Option<u8>,
    },
    /// List the relations of one family, or all of them.
    Relations {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 1)]
        level: u8,
        #[arg(long)]
        family: Option<String>,
    },
}

fn run(cli: &Cli) -> CliResult<Output> {
    let cfg = EvalConfig { tolerance: cli.tol, working_precision: cli.precision, ..EvalConfig::default() };
    match &cli.command {
        Command::Expand { expr } => commands::expand(expr),
        Command::Reduce { expr } => commands::reduce(expr),
        Command::Eval { expr } => {
            cfg.validate().map_err(CliError::from)?;
            commands::eval(expr, &cfg)
        }
        Command::Verify { weight, level } => verify(*weight, *level, &cfg),
        Command::Relations { weight, level, family } => {
            let family = family.as_deref().map(parse_family).transpose()?;
            commands::relations(*weight, *level, family)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.render(cli.json));
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
