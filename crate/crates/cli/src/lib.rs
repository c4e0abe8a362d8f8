//! Command-line front end: argument grammar, report plumbing and the
//! acceptance suites behind `treealpha bench`.

pub mod args;
pub mod bench;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write as _;

use clap::Parser;

pub use args::Cli;
pub use commands::{execute, CliError, Outcome};
pub use report::{Assertion, RunReport};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Merge the `--cap-*` flags into the environment override. Must run before
/// the first `Caps::global()` call, which reads the variable once.
fn apply_caps(cli: &Cli) {
    let spec = cli.caps.spec();
    if spec.is_empty() {
        return;
    }
    let var = treealpha_core::caps::CAP_ENV;
    let merged = match std::env::var(var) {
        Ok(prev) if !prev.trim().is_empty() => format!("{prev},{spec}"),
        _ => spec,
    };
    std::env::set_var(var, merged);
}

/// Parse, run, print; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    apply_caps(&cli);
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut out = std::io::stdout().lock();
    let printed = if cli.json {
        serde_json::to_string_pretty(&outcome.report).map(|s| s + "\n").unwrap_or_default()
    } else {
        match &outcome.text {
            Some(t) if outcome.report.ok => t.clone(),
            Some(t) => t.clone() + &outcome.report.render_text(),
            None => outcome.report.render_text(),
        }
    };
    let _ = out.write_all(printed.as_bytes());
    if outcome.report.ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}
