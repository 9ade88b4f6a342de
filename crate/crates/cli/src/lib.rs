//! The `pinsker` command line.

pub mod args;
pub mod commands;
pub mod output;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, FigureKind};
use commands::IdentityOutput;
use output::{Document, Outcome};

/// Exit code for usage, parse and domain errors.
pub const EXIT_USAGE: i32 = 3;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_to(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Parses `argv`, runs the command and writes the output; returns the exit code.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { 0 };
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let (text, outcome) = match execute(&cli.command) {
        Ok(Rendered::Doc(doc)) => {
            let text = if cli.json { doc.to_json() } else { doc.to_csv() };
            (text, doc.outcome())
        }
        Ok(Rendered::Text(t, o)) => (t, o),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    outcome.exit_code()
}

enum Rendered {
    Doc(Document),
    Text(String, Outcome),
}

fn execute(cmd: &Command) -> pinsker::Result<Rendered> {
    let doc = match cmd {
        Command::Eval { generator, p, q, tol } => commands::eval(generator, p, q, *tol)?,
        Command::Coeffs { generator } => commands::coeffs(generator)?,
        Command::Certify { kind, generator, grid_spec, tol } => commands::certify(*kind, generator, grid_spec, *tol)?,
        Command::Identity { name, alpha, emit_poly } => match commands::identity(*name, alpha.as_deref(), *emit_poly)? {
            IdentityOutput::Table(d) => d,
            IdentityOutput::Text(t, o) => return Ok(Rendered::Text(t, o)),
        },
        Command::Envelope { generator, v, topsoe, tol } => commands::envelope(generator, v, *topsoe, *tol)?,
        Command::Sweep { order, generator, p, v } => commands::sweep(*order, generator, *p, v)?,
        Command::Renyi { alpha, search_violation, p, q, samples, seed } => {
            commands::renyi_cmd(alpha, *search_violation, p.as_deref(), q.as_deref(), *samples, *seed)?
        }
        Command::Figure { kind: FigureKind::Hw, generator, w, grid_spec } => commands::figure_hw(generator, w, grid_spec)?,
        Command::Conjecture { name, grid_spec, v } => commands::conjecture(*name, grid_spec, v)?,
        Command::Report => report::report_all(&report::default_coefficient_expectations())?,
    };
    Ok(Rendered::Doc(doc))
}
