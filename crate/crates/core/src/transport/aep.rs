use ndarray::Array2;

use super::plan::TransportPlan;
use crate::anchor::{anchor_family, AnchorDistribution};
use crate::mmset::MMSet;
use crate::ot1d::Exponent;

/// Monotone coupling between two sorted distributions, as
/// `(point in mu, point in nu, mass)` triples in sweep order.
///
/// Optimal for every convex ground cost `|x - y|^p`, `p >= 1`. Tied atoms
/// are visited in point order, which fixes the otherwise non-unique plan.
pub fn local_coupling(
    mu: &AnchorDistribution,
    nu: &AnchorDistribution,
) -> Vec<(usize, usize, f64)> {
    let (wx, wy) = (mu.weights(), nu.weights());
    let (px, py) = (mu.points(), nu.points());
    let mut out = Vec::with_capacity(wx.len() + wy.len());
    let (mut i, mut j) = (0, 0);
    let mut ra = wx[0];
    let mut rb = wy[0];
    loop {
        let step = ra.min(rb);
        if step > 0.0 {
            out.push((px[i], py[j], step));
        }
        ra -= step;
        rb -= step;
        if ra <= 0.0 {
            i += 1;
            if i == wx.len() {
                break;
            }
            ra = wx[i];
        }
        if rb <= 0.0 {
            j += 1;
            if j == wy.len() {
                break;
            }
            rb = wy[j];
        }
    }
    out
}

/// Anchor energy plan: `Σ_ij a1_i a2_j Q^(ij)`, where `Q^(ij)` is the optimal
/// 1D coupling between the anchor distributions of point `i` of `s1` and
/// point `j` of `s2`, scattered back onto point indices.
///
/// The monotone coupling is optimal for both supported exponents, so `p`
/// does not change the plan; it is accepted to mirror the distance API.
pub fn aep(s1: &MMSet, s2: &MMSet, _p: Exponent) -> TransportPlan {
    let f1 = anchor_family(s1);
    let f2 = anchor_family(s2);
    let mut plan = Array2::<f64>::zeros((s1.len(), s2.len()));
    for (w1, mu) in f1.weights().iter().zip(f1.anchors()) {
        for (w2, nu) in f2.weights().iter().zip(f2.anchors()) {
            let scale = w1 * w2;
            if scale == 0.0 {
                continue;
            }
            for (k, l, mass) in local_coupling(mu, nu) {
                plan[[k, l]] += scale * mass;
            }
        }
    }
    TransportPlan::new(plan, s1.weights().clone(), s2.weights().clone())
        .expect("convex combination of feasible plans")
}
