use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Barabási-Albert preferential attachment.
///
/// Seeded with a star on nodes `0..=attach` (center 0); node `v > attach`
/// then links to `attach` distinct earlier nodes drawn with probability
/// proportional to degree. Node index equals arrival order. The result has
/// `attach + attach * (n - attach - 1)` edges.
pub fn ba_generate(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach < 1 || n <= attach {
        return Err(Error::InvalidParams(format!(
            "need n > attach >= 1, got n = {n}, attach = {attach}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(attach * (n - attach));
    // every edge endpoint once: uniform draws are degree-proportional
    let mut endpoints = Vec::with_capacity(2 * attach * (n - attach));
    for leaf in 1..=attach {
        edges.push((0, leaf));
        endpoints.extend([0, leaf]);
    }
    let mut targets = Vec::with_capacity(attach);
    for v in attach + 1..n {
        targets.clear();
        while targets.len() < attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::unweighted(n, edges)
}

/// Erdős-Rényi `G(n, p)`: every unordered pair independently with probability `p`.
pub fn er_generate(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::unweighted(n, edges)
}
