use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sbuntwist_cli::{
    cmd_check, cmd_push, cmd_untwist, cmd_verify, CenterArg, Format, KindArg, Outcome, TargetArg, VerifyMode,
    VerifyParams, EXIT_USAGE,
};

/// Cycle data, elementary links and untwisting on Severi-Brauer surfaces.
#[derive(Debug, Parser)]
#[command(name = "sbuntwist", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Noether relations of a cycle document.
    Check { file: PathBuf },
    /// Apply one link and print the image document.
    Push {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Orbit id of the centre, or `fresh`.
        #[arg(long)]
        center: CenterArg,
        file: PathBuf,
    },
    /// Factor a cycle into links back to the anticanonical class.
    Untwist {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
    },
    /// Run a verification scan over a finite field.
    Verify {
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        dmax: i64,
    },
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {}: {e}\n", path.display()),
    })
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let result = match cli.command {
        Command::Check { file } => read(&file).map(|t| cmd_check(&t, format)),
        Command::Push { kind, center, file } => read(&file).map(|t| cmd_push(&t, kind, center, format)),
        Command::Untwist { file, target } => read(&file).map(|t| cmd_untwist(&t, target, format)),
        Command::Verify { mode, prime, samples, seed, dmax } => {
            Ok(cmd_verify(VerifyParams { mode, prime, samples, seed, dmax }, format))
        }
    };
    result.unwrap_or_else(|o| o)
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
