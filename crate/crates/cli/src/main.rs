//! Command-line front end: constants tables, verification suites and
//! growth sweeps. Exit codes: 0 success, 1 failed check, 2 bad usage.

mod args;
mod commands;
mod grid;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Constants(a) => (commands::constants(a), &a.common.out),
        Command::Verify(a) => (commands::verify(a), &a.common.out),
        Command::Sweep(a) => (commands::sweep(a), &a.common.out),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
