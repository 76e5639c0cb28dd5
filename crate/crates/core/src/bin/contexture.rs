use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use contexture::cli::{cmd_analyze, cmd_check, cmd_derive, cmd_random, parse_kind, CommandOutput, Exit, RandomOptions};
use contexture::scenario::ScenarioKind;

#[derive(Parser)]
#[command(name = "contexture", version, about = "Exact contextuality measures for pairwise binary systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Gamma_min and Delta_min for a scenario file
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include the optimal quasi-distribution and coupling
        #[arg(long)]
        witness: bool,
    },
    /// Check the measures on seeded random no-signaling scenarios
    Random {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        denominator_bound: i64,
        #[arg(long)]
        json: bool,
        /// Directory for the reproducer file written on a mismatch
        #[arg(long, default_value = ".")]
        reproducer_dir: PathBuf,
    },
    /// Derive the bounds on Delta by Fourier-Motzkin elimination
    Derive {
        kind: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate a scenario file and check no-signaling
    Check { file: PathBuf },
}

fn emit(out: CommandOutput) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.exit.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Exit::InputError.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = match cli.command {
        Command::Analyze { file, json, witness } => cmd_analyze(&file, json, witness),
        Command::Random {
            kind,
            count,
            seed,
            denominator_bound,
            json,
            reproducer_dir,
        } => match parse_kind(&kind) {
            Some(k @ (ScenarioKind::LeggettGarg3 | ScenarioKind::EprBell4)) => cmd_random(
                &RandomOptions {
                    kind: k,
                    count,
                    seed,
                    denominator_bound,
                    reproducer_dir,
                },
                json,
            ),
            _ => CommandOutput {
                exit: Exit::InputError,
                stdout: String::new(),
                stderr: format!("error: --kind must be lg or epr, not {kind:?}\n"),
            },
        },
        Command::Derive { kind, json } => cmd_derive(&kind, json),
        Command::Check { file } => cmd_check(&file),
    };
    emit(out)
}
