//! Command-line driver: config ingestion, subcommands and output envelopes.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod output;

use std::io::Write;

pub use cli::{Cli, Command};
pub use config::RunConfig;
pub use error::{Category, CliError, Result};

/// Runs one invocation: load config, compute, write output, then report any
/// validation failure.
pub fn run(cli: &Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let (out, failure) = commands::execute(&cli.command, &config)?;
    let text = output::render(&out, &config, cli.format)?;
    match output::destination(cli.out.as_deref(), out.command, cli.format) {
        Some(path) => output::write_atomic(&path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?;
        }
    }
    failure.map_or(Ok(()), Err)
}
