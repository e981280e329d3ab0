use anchor_energy::{
    anchor_energy, anchor_wasserstein, entropic_gw, Exponent, MMSet, Method, SolverConfig,
};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Default regularization for anchor Wasserstein.
pub const AW_DEFAULT_EPS: f64 = 1e-5;
/// Default regularization for Gromov-Wasserstein.
pub const GW_DEFAULT_EPS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Metric {
    /// Anchor energy; sweep line for p = 1, pairwise transports for p = 2.
    Ae,
    /// Anchor energy through pairwise 1D transports.
    AeNaive,
    /// Entropic anchor Wasserstein.
    Aw,
    /// Entropic Gromov-Wasserstein.
    Gw,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Ae => "ae",
            Metric::AeNaive => "ae-naive",
            Metric::Aw => "aw",
            Metric::Gw => "gw",
        }
    }

    pub fn needs_solver(self) -> bool {
        matches!(self, Metric::Aw | Metric::Gw)
    }

    pub fn default_eps(self) -> Option<f64> {
        match self {
            Metric::Aw => Some(AW_DEFAULT_EPS),
            Metric::Gw => Some(GW_DEFAULT_EPS),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// AE value, AW transport cost, or GW objective.
    pub value: f64,
    /// AW regularized objective.
    pub objective: Option<f64>,
    pub converged: bool,
    pub iterations: Option<usize>,
}

impl Evaluation {
    /// Plain-text result line.
    pub fn line(&self) -> String {
        match self.objective {
            Some(obj) => format!("{:?} {:?}", self.value, obj),
            None => format!("{:?}", self.value),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "value": self.value, "converged": self.converged });
        if let Some(obj) = self.objective {
            v["regularizedObjective"] = json!(obj);
        }
        if let Some(it) = self.iterations {
            v["iterations"] = json!(it);
        }
        v
    }
}

pub fn evaluate(
    metric: Metric,
    s1: &MMSet,
    s2: &MMSet,
    p: Exponent,
    cfg: Option<&SolverConfig>,
) -> CliResult<Evaluation> {
    let solver =
        || cfg.ok_or_else(|| CliError::Usage(format!("--eps is required for {}", metric.name())));
    Ok(match metric {
        Metric::Ae | Metric::AeNaive => {
            let method = if metric == Metric::Ae {
                Method::fastest_for(p)
            } else {
                Method::Naive
            };
            Evaluation {
                value: anchor_energy(s1, s2, p, method)?,
                objective: None,
                converged: true,
                iterations: None,
            }
        }
        Metric::Aw => {
            let out = anchor_wasserstein(s1, s2, p, solver()?)?;
            Evaluation {
                value: out.distance_cost,
                objective: Some(out.regularized_objective),
                converged: out.converged,
                iterations: Some(out.iterations),
            }
        }
        Metric::Gw => {
            let out = entropic_gw(s1, s2, solver()?)?;
            Evaluation {
                value: out.objective,
                objective: None,
                converged: out.converged,
                iterations: Some(out.outer_iterations),
            }
        }
    })
}
