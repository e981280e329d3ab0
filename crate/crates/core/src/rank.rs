//! Rank-based robust costs.
//!
//! Each entry is replaced by the fraction of all `n²` entries strictly below
//! it. The result depends only on the order of the cost values, so it is
//! unchanged by any strictly increasing rescaling of the costs.

use ndarray::Array2;

use crate::error::Result;
use crate::mmset::check_square_finite;

/// Normalized strict ranks; every entry lies in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedCosts(Array2<f64>);

impl RankedCosts {
    pub fn as_matrix(&self) -> &Array2<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.0
    }
}

/// `out[i, j] = #{(k, l) : C[k, l] < C[i, j]} / n²`, via one argsort.
///
/// Tied entries share the rank of the first position of their group.
pub fn rank_transform(costs: &Array2<f64>) -> Result<RankedCosts> {
    check_square_finite(costs)?;
    let n = costs.nrows();
    let flat: Vec<f64> = costs.iter().copied().collect();
    let mut order: Vec<usize> = (0..flat.len()).collect();
    order.sort_unstable_by(|&a, &b| flat[a].partial_cmp(&flat[b]).unwrap());

    let scale = 1.0 / (n * n) as f64;
    let mut ranks = vec![0.0; flat.len()];
    let mut group_start = 0;
    for (pos, &idx) in order.iter().enumerate() {
        // -0.0 == 0.0, so they share a group
        if pos > 0 && flat[order[pos - 1]] < flat[idx] {
            group_start = pos;
        }
        ranks[idx] = group_start as f64 * scale;
    }
    Ok(RankedCosts(
        Array2::from_shape_vec((n, n), ranks).expect("shape preserved"),
    ))
}
