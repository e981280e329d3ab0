use ndarray::Array2;
use rayon::prelude::*;

use super::plan::TransportPlan;
use super::sinkhorn::{sinkhorn_log, SolverConfig};
use crate::anchor::{anchor_family, AnchorFamily};
use crate::error::Result;
use crate::mmset::MMSet;
use crate::ot1d::{ot1d, Exponent};

#[derive(Debug, Clone)]
pub struct AwOutput {
    /// Unregularized transport cost `⟨P, M⟩`.
    pub distance_cost: f64,
    /// `⟨P, M⟩ - ε H(P)`.
    pub regularized_objective: f64,
    pub plan: TransportPlan,
    pub iterations: usize,
    pub converged: bool,
}

/// `M_ij = OT_p^p(ρ1_i, ρ2_j)` for all anchor pairs. Rows are filled in
/// parallel; every entry is computed independently, so the result does not
/// depend on the worker count.
pub fn anchor_cost_matrix(f1: &AnchorFamily, f2: &AnchorFamily, p: Exponent) -> Array2<f64> {
    let m = f2.len();
    let data: Vec<f64> = f1
        .anchors()
        .par_iter()
        .flat_map_iter(|a| f2.anchors().iter().map(move |b| ot1d(a, b, p)))
        .collect();
    Array2::from_shape_vec((f1.len(), m), data).expect("n*m entries")
}

/// Entropic optimal transport between the anchor families of `s1` and `s2`
/// with `OT_p^p` as the ground cost.
pub fn anchor_wasserstein(
    s1: &MMSet,
    s2: &MMSet,
    p: Exponent,
    cfg: &SolverConfig,
) -> Result<AwOutput> {
    cfg.validate()?;
    let costs = anchor_cost_matrix(&anchor_family(s1), &anchor_family(s2), p);
    let out = sinkhorn_log(&costs, s1.weights(), s2.weights(), cfg)?;
    Ok(AwOutput {
        distance_cost: out.transport_cost,
        regularized_objective: out.regularized_objective,
        plan: out.plan,
        iterations: out.iterations,
        converged: out.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn self_distance_with_distinct_rows() {
        let s = MMSet::uniform(array![
            [0.0, 1.0, 3.0, 6.0],
            [1.0, 0.0, 2.0, 4.0],
            [3.0, 2.0, 0.0, 1.5],
            [6.0, 4.0, 1.5, 0.0]
        ])
        .unwrap();
        let out = anchor_wasserstein(&s, &s, Exponent::ONE, &SolverConfig::new(1e-3)).unwrap();
        assert!(out.converged);
        assert!(out.distance_cost <= 1e-3);
    }

    #[test]
    fn single_points() {
        let s = MMSet::uniform(array![[0.0]]).unwrap();
        let out = anchor_wasserstein(&s, &s, Exponent::ONE, &SolverConfig::new(1.0)).unwrap();
        assert_eq!(out.distance_cost, 0.0);
    }

    #[test]
    fn constant_ground_cost() {
        let s1 = MMSet::uniform(array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let s2 = MMSet::uniform(array![[0.0, 2.0], [2.0, 0.0]]).unwrap();
        let m = anchor_cost_matrix(&anchor_family(&s1), &anchor_family(&s2), Exponent::ONE);
        assert_eq!(m, array![[0.5, 0.5], [0.5, 0.5]]);
        for eps in [1e-4, 1e-2, 1.0, 100.0] {
            let out = anchor_wasserstein(&s1, &s2, Exponent::ONE, &SolverConfig::new(eps)).unwrap();
            assert!((out.distance_cost - 0.5).abs() < 1e-9);
        }
    }
}
