//! Transport plans and solvers: log-domain Sinkhorn, anchor Wasserstein,
//! the anchor energy plan and an entropic Gromov-Wasserstein baseline.

mod aep;
mod aw;
mod gw;
mod plan;
mod sinkhorn;

pub use aep::{aep, local_coupling};
pub use aw::{anchor_cost_matrix, anchor_wasserstein, AwOutput};
pub use gw::{entropic_gw, gw_objective, GwOutput};
pub use plan::TransportPlan;
pub use sinkhorn::{
    sinkhorn_log, sinkhorn_log_warm, Potentials, SinkhornOutput, SolverConfig, MARGINAL_TOL,
};
