use std::process::ExitCode;

use clap::Parser;
use higher_bell::cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            print!("{report}");
            eprintln!("bell: verification failed");
            ExitCode::from(higher_bell::cli::EXIT_VERIFICATION)
        }
        Err(e) => {
            eprintln!("bell: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
