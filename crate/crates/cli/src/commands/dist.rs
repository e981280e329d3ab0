use std::io::Write;
use std::time::Instant;

use anchor_energy::Exponent;
use serde_json::json;

use super::{emit, status};
use crate::args::DistArgs;
use crate::error::{CliError, CliResult};
use crate::metric::evaluate;
use crate::record::RunRecord;

pub fn run(args: &DistArgs, out: &mut dyn Write) -> CliResult<i32> {
    let p = Exponent::new(args.p)?;
    let cfg = if args.metric.needs_solver() {
        let eps = args.eps.ok_or_else(|| {
            CliError::Usage(format!(
                "--eps is required for metric {}",
                args.metric.name()
            ))
        })?;
        Some(args.solver.config(eps)?)
    } else {
        None
    };
    let (s1, s2) = args.inputs.load()?;

    let start = Instant::now();
    let ev = evaluate(args.metric, &s1, &s2, p, cfg.as_ref())?;
    let seconds = start.elapsed().as_secs_f64();

    if args.json {
        let params = json!({
            "metric": args.metric.name(),
            "p": args.p,
            "eps": args.eps,
            "inputs": args.inputs.to_json(),
        });
        emit(
            out,
            &RunRecord::new("dist", params, seconds, ev.to_json()).to_line()?,
        )?;
    } else {
        emit(out, &ev.line())?;
    }
    Ok(status(ev.converged))
}
