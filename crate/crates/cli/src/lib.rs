//! The `tandem` command-line driver.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed check, 2 when a
//! computation would exceed the cell budget.

pub mod args;
pub mod commands;
pub mod format;
pub mod series;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Parser;
use tandem_walks::enumerate::EnumerateError;

use crate::args::{Cli, Command};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;

pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let budget = e.chain().any(|c| {
        matches!(
            c.downcast_ref::<EnumerateError>(),
            Some(EnumerateError::ResourceBudget { .. })
        )
    });
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_VALIDATION
    }
}

fn dispatch(cli: &Cli) -> Result<(commands::Outcome, Option<&Path>)> {
    use Command::*;
    let limit = cli.cell_limit;
    Ok(match &cli.command {
        Enumerate(a) => (commands::enumerate(a, limit)?, a.out.output.as_deref()),
        Exponent(a) => (commands::exponent(a)?, a.out.output.as_deref()),
        Table1(a) => (commands::table1()?, a.out.output.as_deref()),
        Table2(a) => (commands::table2(a)?, a.out.output.as_deref()),
        Classify(a) => (commands::classify(a)?, a.out.output.as_deref()),
        Fit(a) => (commands::fit(a, limit)?, a.out.output.as_deref()),
        Guess(a) => (commands::guess(a)?, a.out.output.as_deref()),
        BijectionCheck(a) => (
            commands::bijection_check(a, limit)?,
            a.out.output.as_deref(),
        ),
    })
}

fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Option<String>> {
    configure_threads(cli.threads)?;
    let (outcome, path) = dispatch(cli)?;
    match path {
        Some(p) => write_file(p, &outcome.text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(outcome.failure)
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(None) => 0,
        Ok(Some(failure)) => {
            eprintln!("error: {failure}");
            EXIT_VALIDATION
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
