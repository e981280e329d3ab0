//! Seeded synthetic MMSets.

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mmset::MMSet;

/// `n` points uniform in `[0, 1]^dim` with Euclidean costs and uniform weights.
pub fn point_cloud(n: usize, dim: usize, seed: u64) -> Result<MMSet> {
    if n == 0 || dim == 0 {
        return Err(Error::InvalidParams(format!(
            "point cloud needs n, dim >= 1, got n = {n}, dim = {dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = Array2::from_shape_fn((n, dim), |_| rng.gen::<f64>());
    MMSet::uniform(euclidean_costs(&pts))
}

/// Pairwise Euclidean distances between the rows of `pts`.
pub fn euclidean_costs(pts: &Array2<f64>) -> Array2<f64> {
    let n = pts.nrows();
    let mut c = Array2::zeros((n, n));
    for i in 0..n {
        for j in i + 1..n {
            let d = (&pts.row(i) - &pts.row(j)).mapv(|x| x * x).sum().sqrt();
            c[[i, j]] = d;
            c[[j, i]] = d;
        }
    }
    c
}

/// Strictly positive weights summing to one.
pub fn random_weights(n: usize, rng: &mut impl Rng) -> Array1<f64> {
    let w: Array1<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s = w.sum();
    w / s
}
