//! `ionring` command-line front end.
//!
//! Exit status: 0 on success, 2 for usage errors, 1 for errors raised by the
//! computation or while writing output. Diagnostics are a single line on stderr.

mod args;
mod commands;
mod grid;
mod output;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use ionring::{ConstantSet, CODATA_2018};

/// Testing-only override of the physical-constant set.
const CONSTANTS_ENV: &str = "IONRING_CONSTANTS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Clap(clap::Error),
    Domain(String),
}

impl From<ionring::Error> for CliError {
    fn from(e: ionring::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Clap(e) => {
                let text = e.render().to_string();
                f.write_str(text.lines().next().unwrap_or_default().trim_start_matches("error: "))
            }
        }
    }
}

fn constants() -> Result<ConstantSet, CliError> {
    match std::env::var(CONSTANTS_ENV) {
        Ok(name) => ConstantSet::by_name(&name)
            .ok_or_else(|| CliError::Usage(format!("{CONSTANTS_ENV}: unknown constant set '{name}'"))),
        Err(_) => Ok(CODATA_2018),
    }
}

fn run(raw: Vec<String>) -> Result<(), CliError> {
    let cli = args::parse(raw)?;
    let constants = constants()?;
    let out = commands::run(&cli.command, &constants)?;
    let header = output::Header {
        args: cli.command.canonical(),
        constants: constants.name,
        units: out.units,
        notes: out.notes,
    };
    let text = output::render(&out.doc, &header, cli.command.format())?;
    match &cli.command.output().output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Domain(format!("cannot write output: {e}"))),
    }
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    match run(raw) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Clap(e)) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ionring: error: {e}");
            ExitCode::from(match e {
                CliError::Domain(_) => 1,
                _ => 2,
            })
        }
    }
}
