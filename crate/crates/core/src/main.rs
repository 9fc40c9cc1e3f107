mod cli;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::run(&args) {
        Ok(outcome) => match cli::emit(&args, &outcome) {
            Ok(()) => ExitCode::from(outcome.status),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}
