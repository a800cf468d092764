mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::List(out) => commands::list(&out)?,
        Command::Spectrum(a) => commands::spectrum(&a)?,
        Command::Rs(a) => commands::rs(&a)?,
        Command::Wavefunction(a) => {
            for path in commands::wavefunction(&a)? {
                println!("{}", path.display());
            }
        }
        Command::Ground(a) => commands::ground(&a)?,
        Command::Verify(a) => {
            if !commands::verify(&a)? {
                eprintln!("verification failed; see the report diagnostics");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Classify(a) => commands::classify_cmd(&a)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
