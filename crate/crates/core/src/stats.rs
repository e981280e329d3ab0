//! Energy-distance permutation tests between families of 1D distributions.
//!
//! Each family holds one distribution per sample (for instance the degree
//! distribution of one graph). The statistic is the energy distance with the
//! raw 1D Wasserstein-1 distance as ground cost, evaluated by the sweep.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anchor::{AnchorDistribution, AnchorFamily};
use crate::error::{Error, Result};
use crate::ot1d::Exponent;
use crate::sweep::{family_energy, Method};

/// Permuted statistics within this relative distance below the observed one
/// count as ties, so that exact ties are not split by summation roundoff.
pub const TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TestReport {
    pub statistic: f64,
    /// Add-one estimate, in `[1 / (permutations + 1), 1]`.
    pub p_value: f64,
    pub permutations: usize,
    pub alpha: f64,
    /// `p_value <= alpha`.
    pub reject: bool,
}

/// Energy distance between two uniformly weighted families.
pub fn energy_statistic(f1: &AnchorFamily, f2: &AnchorFamily) -> f64 {
    family_energy(f1, f2, Exponent::ONE, Method::Sweep).expect("sweep supports p = 1")
}

/// Same statistic through pairwise 1D transports; reference and timing baseline.
pub fn energy_statistic_naive(f1: &AnchorFamily, f2: &AnchorFamily) -> f64 {
    family_energy(f1, f2, Exponent::ONE, Method::Naive).expect("naive supports p = 1")
}

/// Permutation two-sample test of `f1` against `f2`.
///
/// Replica `r` shuffles the pooled samples with a ChaCha8 stream derived
/// from `(seed, r)`, so the report does not depend on the thread count.
pub fn permutation_test(
    f1: &AnchorFamily,
    f2: &AnchorFamily,
    n_perm: usize,
    alpha: f64,
    seed: u64,
) -> Result<TestReport> {
    if n_perm == 0 {
        return Err(Error::InvalidParams(
            "permutation count must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    require_uniform(f1)?;
    require_uniform(f2)?;

    let observed = energy_statistic(f1, f2);
    let pooled: Vec<&AnchorDistribution> = f1.anchors().iter().chain(f2.anchors()).collect();
    let s1 = f1.len();
    let threshold = observed - TIE_TOL * observed.abs().max(1.0);

    let exceed = (0..n_perm)
        .into_par_iter()
        .map(|r| -> Result<usize> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let mut order: Vec<usize> = (0..pooled.len()).collect();
            order.shuffle(&mut rng);
            let pick = |idx: &[usize]| {
                AnchorFamily::uniform(idx.iter().map(|&k| pooled[k].clone()).collect())
            };
            let stat = energy_statistic(&pick(&order[..s1])?, &pick(&order[s1..])?);
            Ok(usize::from(stat >= threshold))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;

    let p_value = (1 + exceed) as f64 / (1 + n_perm) as f64;
    Ok(TestReport {
        statistic: observed,
        p_value,
        permutations: n_perm,
        alpha,
        reject: p_value <= alpha,
    })
}

fn require_uniform(f: &AnchorFamily) -> Result<()> {
    let expected = 1.0 / f.len() as f64;
    if f.weights().iter().any(|w| (w - expected).abs() > 1e-12) {
        return Err(Error::InvalidParams(
            "permutation test needs uniformly weighted families".into(),
        ));
    }
    Ok(())
}
