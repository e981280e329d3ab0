use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use anchor_energy::graphs::order_correlation_with;
use anchor_energy::{
    aep, anchor_wasserstein, entropic_gw, extract_matching, order_correlation, Error, Exponent,
};
use serde_json::{json, Value};

use super::{emit, status};
use crate::args::{PlanArgs, PlanKind};
use crate::error::{CliError, CliResult};
use crate::io::{read_reals, write_matrix};
use crate::metric::{AW_DEFAULT_EPS, GW_DEFAULT_EPS};
use crate::record::RunRecord;

pub fn run(args: &PlanArgs, out: &mut dyn Write) -> CliResult<i32> {
    let p = Exponent::new(args.p)?;
    let (s1, s2) = args.inputs.load()?;

    let start = Instant::now();
    let (plan, converged, mut result) = match args.kind {
        PlanKind::Aep => {
            let plan = aep(&s1, &s2, p);
            (plan, true, json!({}))
        }
        PlanKind::Aw => {
            let cfg = args.solver.config(args.eps.unwrap_or(AW_DEFAULT_EPS))?;
            let o = anchor_wasserstein(&s1, &s2, p, &cfg)?;
            let r =
                json!({ "cost": o.distance_cost, "regularizedObjective": o.regularized_objective });
            (o.plan, o.converged, r)
        }
        PlanKind::Gw => {
            let cfg = args.solver.config(args.eps.unwrap_or(GW_DEFAULT_EPS))?;
            let o = entropic_gw(&s1, &s2, &cfg)?;
            (o.plan, o.converged, json!({ "objective": o.objective }))
        }
    };
    let seconds = start.elapsed().as_secs_f64();

    write_matrix(&args.out, plan.matrix())?;
    result["marginalResidual"] = json!(plan.marginal_residual());
    result["converged"] = json!(converged);

    if let Some(path) = &args.match_out {
        let matching = extract_matching(&plan);
        let mut text = String::new();
        for j in &matching.assignment {
            writeln!(text, "{j}").unwrap();
        }
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))?;

        let corr = match (&args.order1, &args.order2) {
            (Some(o1), Some(o2)) => {
                order_correlation_with(&matching, &read_reals(o1)?, &read_reals(o2)?)
            }
            _ => order_correlation(&matching),
        };
        let corr = match corr {
            Ok(c) => Some(c),
            Err(Error::DegenerateVariance) => None,
            Err(e) => return Err(e.into()),
        };
        result["correlation"] = corr.map_or(Value::Null, |c| json!(c));
        if !args.json {
            match corr {
                Some(c) => emit(out, &format!("correlation {c}"))?,
                None => emit(out, "correlation undefined (constant assignment)")?,
            }
        }
    }

    if args.json {
        let kind = match args.kind {
            PlanKind::Aep => "aep",
            PlanKind::Aw => "aw",
            PlanKind::Gw => "gw",
        };
        let params = json!({
            "kind": kind,
            "p": args.p,
            "eps": args.eps,
            "out": args.out,
            "match": args.match_out,
            "inputs": args.inputs.to_json(),
        });
        emit(
            out,
            &RunRecord::new("plan", params, seconds, result).to_line()?,
        )?;
    }
    Ok(status(converged))
}
