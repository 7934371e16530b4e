//! Command-line driver: selects families and primes, runs the checks on a
//! worker pool and writes JSON or CSV reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

pub use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let out = match &cli.command {
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Constants(a) => commands::cmd_constants(a),
        Command::Golden(a) => commands::cmd_golden(a),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("legdet: {e}");
            e.exit_code()
        }
    }
}
