//! Shared generators for integration tests.
#![allow(dead_code)]

use anchor_energy::synthetic::random_weights;
use anchor_energy::MMSet;
use ndarray::Array2;
use rand::Rng;

/// Random MMSet with zero diagonal. With `ties`, costs are drawn from a
/// small grid so that many atoms coincide within and across anchors.
pub fn random_mmset(rng: &mut impl Rng, n: usize, ties: bool) -> MMSet {
    let mut c = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                c[[i, j]] = if ties {
                    f64::from(rng.gen_range(1..5u8)) * 0.5
                } else {
                    rng.gen_range(0.0..3.0)
                };
            }
        }
    }
    let w = if rng.gen_bool(0.5) {
        Some(random_weights(n, rng))
    } else {
        None
    };
    MMSet::new(w, c).unwrap()
}

/// Random symmetric metric: Euclidean distances of points in the plane.
pub fn random_metric(rng: &mut impl Rng, n: usize) -> MMSet {
    let pts = Array2::from_shape_fn((n, 2), |_| rng.gen::<f64>());
    let w = random_weights(n, rng);
    MMSet::new(Some(w), anchor_energy::synthetic::euclidean_costs(&pts)).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
