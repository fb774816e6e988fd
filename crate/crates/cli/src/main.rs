mod args;
mod commands;
mod error;
mod state;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Body, Output};
use error::{usage, CliError, Result};

const THREADS_VAR: &str = "ORACLE_DISC_THREADS";

/// Exit status when a report names a function that is neither constant nor balanced.
const EXIT_OUTSIDE_PROMISE: u8 = 3;

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            usage(format!(
                "{THREADS_VAR} must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| usage(format!("thread pool: {e}")))
}

fn execute(cli: &Cli) -> Result<Output> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Discriminate(a) => commands::discriminate(a, cli.tol, cli.seed),
        Command::ThermalBound(a) => commands::thermal_bound(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Run(a) => commands::run(a, cli.tol, cli.seed),
        Command::Classical(a) => commands::classical(a),
    }
}

fn emit(cli: &Cli, output: &Output) -> Result<()> {
    let text = match &output.body {
        Body::Json(t) | Body::Csv(t) => t,
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .and_then(|()| execute(&cli))
        .and_then(|out| emit(&cli, &out).map(|()| out));
    match result {
        Ok(out) if out.outside_promise => {
            eprintln!("error: function is neither constant nor balanced");
            ExitCode::from(EXIT_OUTSIDE_PROMISE)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
