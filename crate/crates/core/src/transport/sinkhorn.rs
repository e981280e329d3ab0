//! Entropic optimal transport with Sinkhorn iterations on dual potentials.
//!
//! Potentials are kept in log space so that very small regularization
//! (relative to the cost scale) neither underflows nor overflows:
//!
//! ```text
//! f_i = ε log a_i - ε LSE_j((g_j - M_ij) / ε)
//! g_j = ε log b_j - ε LSE_i((f_i - M_ij) / ε)
//! P_ij = exp((f_i + g_j - M_ij) / ε)
//! ```
//!
//! Cold starts anneal ε down from the cost range; the final stage uses
//! over-relaxed updates, which share the fixed point of plain Sinkhorn.

use ndarray::{Array1, Array2};

use super::plan::TransportPlan;
use crate::error::{Error, Result};

/// Returned plans meet their marginals to this accuracy; iterates that do not
/// are projected onto the constraints.
pub const MARGINAL_TOL: f64 = 1e-7;

/// Ratio between consecutive regularizations on a cold start.
const EPS_SCALING_FACTOR: f64 = 0.25;
/// Row-marginal error at which an intermediate stage hands over.
const STAGE_TOL: f64 = 1e-4;
const STAGE_MAX_ITER: usize = 1000;
/// Plans are only formed and compared once the previous iterate's row error
/// is below this, so a stalled far-off iterate cannot pass the change test.
const PLAN_GATE: f64 = 1e-3;
/// Over-relaxation of the final-stage potential updates, switched on once the
/// row error is below [`SOR_START`] and off for good if it later grows past
/// [`SOR_DIVERGENCE`] times its best relaxed value.
const OVER_RELAXATION: f64 = 1.8;
const SOR_START: f64 = 1e-3;
const SOR_DIVERGENCE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub epsilon: f64,
    /// Stop when the relative L1 change of the plan over one sweep drops below this.
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Outer linearization steps (Gromov-Wasserstein only).
    pub outer_max_iter: usize,
    /// Random starts tried after the product coupling (Gromov-Wasserstein only).
    pub restarts: usize,
}

impl SolverConfig {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            rel_tol: 1e-6,
            max_iter: 10_000,
            outer_max_iter: 200,
            restarts: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_iter == 0 || self.outer_max_iter == 0 {
            return Err(Error::InvalidParams(
                "iteration limits must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Dual potentials `(f, g)`, reusable as a warm start.
#[derive(Debug, Clone, PartialEq)]
pub struct Potentials {
    pub f: Array1<f64>,
    pub g: Array1<f64>,
}

#[derive(Debug, Clone)]
pub struct SinkhornOutput {
    pub plan: TransportPlan,
    /// `⟨P, M⟩`.
    pub transport_cost: f64,
    /// `⟨P, M⟩ - ε H(P)`.
    pub regularized_objective: f64,
    pub iterations: usize,
    /// `false` when the iteration limit was hit; the last iterate is still returned.
    pub converged: bool,
    pub potentials: Potentials,
}

impl SinkhornOutput {
    /// Turns an unconverged run into [`Error::NotConverged`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                iterations: self.iterations,
            })
        }
    }
}

pub fn sinkhorn_log(
    costs: &Array2<f64>,
    a: &Array1<f64>,
    b: &Array1<f64>,
    cfg: &SolverConfig,
) -> Result<SinkhornOutput> {
    sinkhorn_log_warm(costs, a, b, cfg, None)
}

/// [`sinkhorn_log`] starting from the given potentials.
///
/// Cold starts, and warm starts whose first sweep leaves a row error above
/// [`SOR_START`], first solve loosely at a regularization near the cost range
/// and divide it by four per stage until the target is reached. All stages
/// share `max_iter`.
pub fn sinkhorn_log_warm(
    costs: &Array2<f64>,
    a: &Array1<f64>,
    b: &Array1<f64>,
    cfg: &SolverConfig,
    warm: Option<&Potentials>,
) -> Result<SinkhornOutput> {
    cfg.validate()?;
    let (n, m) = costs.dim();
    if a.len() != n {
        return Err(Error::WeightLength {
            expected: n,
            got: a.len(),
        });
    }
    if b.len() != m {
        return Err(Error::WeightLength {
            expected: m,
            got: b.len(),
        });
    }
    if let Some(((row, col), _)) = costs.indexed_iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { row, col });
    }

    let eps = cfg.epsilon;
    let mut state = State {
        costs,
        cost_t: costs.t().as_standard_layout().into_owned(),
        log_a: a.iter().map(|x| x.ln()).collect(),
        log_b: b.iter().map(|x| x.ln()).collect(),
        f: vec![0.0; n],
        g: vec![0.0; m],
        scratch: vec![0.0; n.max(m)],
    };
    let mut budget = cfg.max_iter;
    let mut anneal = true;
    if let Some(p) = warm.filter(|p| p.f.len() == n && p.g.len() == m) {
        state.f = p.f.to_vec();
        state.g = p.g.to_vec();
        let residual = state.update_f(eps, 1.0);
        state.update_g(eps, 1.0);
        budget -= 1;
        anneal = residual > SOR_START;
    }
    if anneal {
        // from far away, small-ε updates stall; approach the target from the cost range
        let (lo, hi) = costs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
                (l.min(v), h.max(v))
            });
        let mut stage_eps = (hi - lo) * EPS_SCALING_FACTOR;
        while stage_eps > eps && budget > 0 {
            budget -= state.relax(stage_eps, budget.min(STAGE_MAX_ITER));
            stage_eps *= EPS_SCALING_FACTOR;
        }
    }
    let mut iterations = cfg.max_iter - budget;

    let mut plan = vec![0.0; n * m];
    let mut prev = vec![0.0; n * m];
    let mut converged = false;
    // plan and prev hold the last two iterates only while both are current
    let mut have_plan = false;
    let mut omega = 1.0;
    let mut relax = true;
    let mut best_residual = f64::INFINITY;
    while iterations < cfg.max_iter {
        iterations += 1;
        let cheap_residual = state.update_f(eps, omega);
        state.update_g(eps, omega);
        if omega > 1.0 {
            best_residual = best_residual.min(cheap_residual);
            if cheap_residual > SOR_DIVERGENCE * best_residual {
                relax = false;
            }
        }
        omega = if relax && cheap_residual <= SOR_START {
            OVER_RELAXATION
        } else {
            1.0
        };
        if cheap_residual > PLAN_GATE {
            have_plan = false;
            continue;
        }
        std::mem::swap(&mut plan, &mut prev);
        let have_prev = have_plan;
        fill_plan(&mut plan, costs, &state.f, &state.g, eps);
        have_plan = true;
        if have_prev {
            let change: f64 = plan.iter().zip(&prev).map(|(p, q)| (p - q).abs()).sum();
            let mass: f64 = prev.iter().sum();
            if change < cfg.rel_tol * mass {
                converged = true;
                break;
            }
        }
    }
    if !have_plan {
        fill_plan(&mut plan, costs, &state.f, &state.g, eps);
    }

    if marginal_residual(&plan, a, b) > MARGINAL_TOL {
        round_to_marginals(&mut plan, a, b);
    }
    let matrix = Array2::from_shape_vec((n, m), plan).expect("shape");
    let plan = TransportPlan::new(matrix, a.clone(), b.clone())?;
    let transport_cost = plan.cost(costs);
    let regularized_objective = transport_cost - eps * plan.entropy();
    Ok(SinkhornOutput {
        plan,
        transport_cost,
        regularized_objective,
        iterations,
        converged,
        potentials: Potentials {
            f: Array1::from(state.f),
            g: Array1::from(state.g),
        },
    })
}

struct State<'a> {
    costs: &'a Array2<f64>,
    cost_t: Array2<f64>,
    log_a: Vec<f64>,
    log_b: Vec<f64>,
    f: Vec<f64>,
    g: Vec<f64>,
    scratch: Vec<f64>,
}

impl State<'_> {
    /// Row update; returns the largest row-marginal error of the previous
    /// iterate, recovered from the change of `f` without forming the plan.
    fn update_f(&mut self, eps: f64, omega: f64) -> f64 {
        let m = self.g.len();
        let mut residual: f64 = 0.0;
        for i in 0..self.f.len() {
            let row = self.costs.row(i);
            let row = row.as_slice().expect("standard layout");
            for (s, (&gj, &mij)) in self.scratch.iter_mut().zip(self.g.iter().zip(row)) {
                *s = (gj - mij) / eps;
            }
            let next = eps * self.log_a[i] - eps * log_sum_exp(&self.scratch[..m]);
            let ai = self.log_a[i].exp();
            residual = residual.max((ai * ((self.f[i] - next) / eps).exp() - ai).abs());
            self.f[i] += omega * (next - self.f[i]);
        }
        residual
    }

    fn update_g(&mut self, eps: f64, omega: f64) {
        let n = self.f.len();
        for j in 0..self.g.len() {
            let col = self.cost_t.row(j);
            let col = col.as_slice().expect("standard layout");
            for (s, (&fi, &mij)) in self.scratch.iter_mut().zip(self.f.iter().zip(col)) {
                *s = (fi - mij) / eps;
            }
            let next = eps * self.log_b[j] - eps * log_sum_exp(&self.scratch[..n]);
            self.g[j] += omega * (next - self.g[j]);
        }
    }

    /// Loose solve at an intermediate `eps`; returns the iterations used.
    fn relax(&mut self, eps: f64, budget: usize) -> usize {
        let mut used = 0;
        let mut residual = f64::INFINITY;
        let mut omega = 1.0;
        while used < budget && residual > STAGE_TOL {
            residual = self.update_f(eps, omega);
            self.update_g(eps, omega);
            omega = if residual <= SOR_START {
                OVER_RELAXATION
            } else {
                1.0
            };
            used += 1;
        }
        used
    }
}

fn fill_plan(plan: &mut [f64], costs: &Array2<f64>, f: &[f64], g: &[f64], eps: f64) {
    let m = g.len();
    for (i, out) in plan.chunks_mut(m.max(1)).enumerate() {
        let row = costs.row(i);
        for ((p, &gj), &mij) in out.iter_mut().zip(g).zip(row.iter()) {
            *p = ((f[i] + gj - mij) / eps).exp();
        }
    }
}

fn marginal_residual(plan: &[f64], a: &Array1<f64>, b: &Array1<f64>) -> f64 {
    let m = b.len().max(1);
    let mut cols = vec![0.0; b.len()];
    let mut worst: f64 = 0.0;
    for (row, &ai) in plan.chunks(m).zip(a.iter()) {
        worst = worst.max((row.iter().sum::<f64>() - ai).abs());
        for (c, &p) in cols.iter_mut().zip(row) {
            *c += p;
        }
    }
    cols.iter()
        .zip(b.iter())
        .fold(worst, |w, (c, bj)| w.max((c - bj).abs()))
}

/// Makes a positive matrix feasible: rows, then columns, are scaled down to
/// at most their targets, and the remaining deficits are filled by the
/// nonnegative rank-one term `dr dcᵀ / |dr|₁`.
fn round_to_marginals(plan: &mut [f64], a: &Array1<f64>, b: &Array1<f64>) {
    let m = b.len().max(1);
    for (row, &ai) in plan.chunks_mut(m).zip(a.iter()) {
        let s: f64 = row.iter().sum();
        if s > ai {
            row.iter_mut().for_each(|p| *p *= ai / s);
        }
    }
    let mut cols = vec![0.0; b.len()];
    for row in plan.chunks(m) {
        cols.iter_mut().zip(row).for_each(|(c, p)| *c += p);
    }
    let col_scale: Vec<f64> = cols
        .iter()
        .zip(b.iter())
        .map(|(&c, &bj)| if c > bj { bj / c } else { 1.0 })
        .collect();
    for row in plan.chunks_mut(m) {
        row.iter_mut().zip(&col_scale).for_each(|(p, s)| *p *= s);
    }
    let dr: Vec<f64> = plan
        .chunks(m)
        .zip(a.iter())
        .map(|(row, &ai)| (ai - row.iter().sum::<f64>()).max(0.0))
        .collect();
    let mut dc = b.to_vec();
    for row in plan.chunks(m) {
        dc.iter_mut().zip(row).for_each(|(d, p)| *d -= p);
    }
    dc.iter_mut().for_each(|d| *d = d.max(0.0));
    let total: f64 = dr.iter().sum();
    if total > 0.0 {
        for (row, &ri) in plan.chunks_mut(m).zip(&dr) {
            row.iter_mut()
                .zip(&dc)
                .for_each(|(p, &cj)| *p += ri * cj / total);
        }
    }
}

/// `log Σ exp(x_i)`, `-∞` for an empty or all-`-∞` input.
pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}
