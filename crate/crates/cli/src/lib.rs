//! The `probbern` command line: exact tables, basis expansions and identity
//! suites as JSON or CSV, with exit status 0 (success), 1 (engine or
//! verification failure) or 2 (usage error).

pub mod args;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] probbern_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(_) | CliError::Output(_) => 1,
        }
    }
}

/// What a command produced: the rendered text and whether it succeeded.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

/// Parses `argv`, runs the command and writes its output. Returns the exit
/// status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match commands::execute(&cli).and_then(|o| emit(&cli, o, stdout)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, outcome: Outcome, stdout: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.out {
        Some(path) => output::write_atomic(path, &outcome.text)?,
        None => stdout
            .write_all(outcome.text.as_bytes())
            .map_err(|e| CliError::Output(e.to_string()))?,
    }
    Ok(outcome.ok)
}
