mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// A bad flag, missing parameter or malformed config.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

fn run(cli: Cli) -> anyhow::Result<bool> {
    let command = cli.command.name();
    let (report, params) = match cli.command {
        Command::Bounds { name, params } => {
            let p = params.resolve()?;
            (commands::bounds(name, &p)?, p)
        }
        Command::Simulate { params } => {
            let p = params.resolve()?;
            (commands::simulate(&p)?, p)
        }
        Command::Learn { params } => {
            let p = params.resolve()?;
            (commands::learn(&p)?, p)
        }
        Command::Delegate { params } => {
            let p = params.resolve()?;
            (commands::delegate(&p)?, p)
        }
    };
    let text = report.render(params.format())?;
    match output::destination(&params, command) {
        Some(path) => output::write_atomic(&path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.violation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("pacsc: invariant violated, see rows with holds/dominated = false");
            ExitCode::from(EXIT_VIOLATION)
        }
        Err(e) => {
            eprintln!("pacsc: {e:#}");
            let usage = e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<pacsc_core::Error>().is_some();
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAILURE })
        }
    }
}
