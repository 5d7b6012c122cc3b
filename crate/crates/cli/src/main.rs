//! Command-line frontend: JSON I/O and human-readable report tables over
//! the exact lattice/orbifold library.
//!
//! Exit codes: 0 success, 1 internal inconsistency (a mathematical
//! identity failed, which indicates a bug), 2 violated precondition
//! (bad or out-of-contract input), 64 usage error.

mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::{Cli, RunOutcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are ordinary successes.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(64);
        }
    };

    if let Some(threads) = read_thread_cap() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    match commands::dispatch(cli) {
        Ok(RunOutcome::Success) => ExitCode::SUCCESS,
        Ok(RunOutcome::PreconditionFailed) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_inconsistency() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn read_thread_cap() -> Option<usize> {
    let raw = std::env::var("ORBILAT_THREADS").ok()?;
    match raw.parse::<usize>() {
        Ok(n) if n >= 1 => Some(n),
        _ => {
            eprintln!("warning: ignoring invalid ORBILAT_THREADS='{raw}'");
            None
        }
    }
}
