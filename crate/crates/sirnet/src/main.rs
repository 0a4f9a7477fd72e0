use std::io::ErrorKind;
use std::process::ExitCode;

use clap::Parser;
use sirnet::cli::Cli;
use sirnet::AppError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = sirnet::run(&cli);
    if let Err(AppError::Io(e)) = &result {
        // A closed pipe (e.g. `| head`) is not a failure.
        if e.kind() == ErrorKind::BrokenPipe {
            return ExitCode::SUCCESS;
        }
    }
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(sirnet::exit_code(&result))
}
