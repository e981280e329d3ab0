use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use anchor_energy::synthetic::point_cloud;
use anchor_energy::{Exponent, MMSet};
use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::emit;
use crate::args::BenchArgs;
use crate::error::{CliError, CliResult};
use crate::io::read_matrix;
use crate::metric::{evaluate, Metric};

pub const MIN_SIZE: usize = 32;

/// Times every requested method on one worker thread; reports the minimum
/// over repeats. Input construction is not timed.
pub fn run(args: &BenchArgs, out: &mut dyn Write) -> CliResult<i32> {
    if let Some(&n) = args.sizes.iter().find(|&&n| n < MIN_SIZE) {
        return Err(CliError::Usage(format!(
            "sizes must be at least {MIN_SIZE}, got {n}"
        )));
    }
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    let source = args.cost.as_deref().map(read_matrix).transpose()?;
    let aw = args.solver.config(args.aw_eps)?;
    let gw = args.solver.config(args.gw_eps)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;

    let mut csv = String::from("method,n,seconds\n");
    for &n in &args.sizes {
        let (s1, s2) = inputs(n, args, source.as_ref())?;
        for &method in &args.methods {
            let allowed = match method {
                Metric::Ae => true,
                Metric::AeNaive => n <= args.naive_max,
                Metric::Aw | Metric::Gw => n <= args.solver_max,
            };
            if !allowed {
                continue;
            }
            let cfg = match method {
                Metric::Aw => Some(&aw),
                Metric::Gw => Some(&gw),
                _ => None,
            };
            let mut best = f64::INFINITY;
            for _ in 0..args.repeats {
                let start = Instant::now();
                pool.install(|| evaluate(method, &s1, &s2, Exponent::ONE, cfg))?;
                best = best.min(start.elapsed().as_secs_f64());
            }
            writeln!(csv, "{},{n},{best}", method.name()).unwrap();
        }
    }

    match &args.out {
        Some(path) => std::fs::write(path, &csv).map_err(|e| CliError::io(path, e))?,
        None => emit(out, csv.trim_end())?,
    }
    Ok(0)
}

fn inputs(n: usize, args: &BenchArgs, source: Option<&Array2<f64>>) -> CliResult<(MMSet, MMSet)> {
    let seed = args.seed.wrapping_mul(1_000_003).wrapping_add(n as u64);
    match source {
        None => Ok((
            point_cloud(n, args.dim, seed)?,
            point_cloud(n, args.dim, seed ^ 0x5555_5555)?,
        )),
        Some(m) => {
            if m.nrows() != m.ncols() || m.nrows() < n {
                return Err(CliError::Usage(format!(
                    "cost matrix is {}x{}, cannot subsample {n} points",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || {
                let mut idx = rand::seq::index::sample(&mut rng, m.nrows(), n).into_vec();
                idx.sort_unstable();
                MMSet::uniform(Array2::from_shape_fn((n, n), |(i, j)| m[[idx[i], idx[j]]]))
            };
            Ok((pick()?, pick()?))
        }
    }
}
