//! Command-line front end for the `anchor_energy` library.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when an entropic
//! solver hit its iteration limit (the last iterate is still reported).

pub mod args;
pub mod commands;
pub mod error;
pub mod io;
pub mod metric;
pub mod record;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Parses `argv`, runs the command and returns the process exit status.
pub fn run_from<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // a second configuration attempt in one process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match &cli.command {
        Command::Dist(a) => commands::dist::run(a, out),
        Command::Plan(a) => commands::plan::run(a, out),
        Command::Bench(a) => commands::bench::run(a, out),
        Command::Test2(a) => commands::test2::run(a, out),
        Command::Knn(a) => commands::knn::run(a, out),
        Command::Gen(a) => commands::files::gen(a, out),
        Command::Geodesic(a) => commands::files::geodesic(a),
        Command::Convert(a) => commands::files::convert(a),
    }
}
