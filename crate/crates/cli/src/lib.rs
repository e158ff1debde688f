//! The `bdmp` command line: argument parsing, file formats and commands.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 violated
//! precondition (BD width, grammar class, dimensions), 4 oracle mismatch.

pub mod args;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use args::Cli;
pub use commands::Outcome;
pub use error::{CliError, CliResult};

use args::Command;

/// Runs one command on a pool of `cli.threads` workers and writes the run
/// report if one was requested. A missing seed counts as 0; call
/// [`Cli::draw_seed`] first to pick one.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    let go = || match &cli.command {
        Command::Multiply(a) => commands::multiply(a, seed),
        Command::Parse(a) => commands::parse(a, seed),
        Command::Led(a) => commands::led(a, seed),
        Command::Rna(a) => commands::rna(a, seed),
        Command::Osg(a) => commands::osg(a, seed),
        Command::Convolve(a) => commands::convolve(a, seed),
        Command::Bench(a) => commands::bench(a, seed),
    };
    let outcome = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Precondition(format!("thread pool: {e}")))?
            .install(go)?,
        None => go()?,
    };
    if let Some(path) = &cli.report {
        let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        formats::write_text(path, &(json + "\n"))?;
    }
    Ok(outcome)
}
