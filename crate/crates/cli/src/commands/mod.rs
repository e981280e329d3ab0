pub mod bench;
pub mod dist;
pub mod files;
pub mod knn;
pub mod plan;
pub mod test2;

use std::io::Write;

use crate::error::{CliError, CliResult};

pub(crate) fn emit(out: &mut dyn Write, line: &str) -> CliResult<()> {
    writeln!(out, "{line}").map_err(CliError::stdout)
}

/// Exit status for a run whose solver may have stopped early.
pub(crate) fn status(converged: bool) -> i32 {
    if converged {
        0
    } else {
        eprintln!("warning: solver stopped at its iteration limit before converging");
        2
    }
}
