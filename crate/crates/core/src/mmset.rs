//! Measured metric sets: a probability vector paired with a square cost matrix.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Absolute tolerance on `sum(weights) == 1` for a validated set.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Drifts up to this size are renormalized on ingestion; larger ones are rejected.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// A discrete measured metric set `(a, C)`.
///
/// Invariants (enforced by [`MMSet::new`]): `C` is square, non-empty and
/// finite; `a` is nonnegative and sums to one within [`WEIGHT_SUM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct MMSet {
    weights: Array1<f64>,
    costs: Array2<f64>,
}

impl MMSet {
    /// Validates `costs` and `weights`. Absent weights become uniform.
    pub fn new(weights: Option<Array1<f64>>, costs: Array2<f64>) -> Result<Self> {
        check_square_finite(&costs)?;
        let n = costs.nrows();
        let weights = match weights {
            None => Array1::from_elem(n, 1.0 / n as f64),
            Some(w) => normalize_weights(w, n)?,
        };
        Ok(Self { weights, costs })
    }

    /// Uniform weights over `costs`.
    pub fn uniform(costs: Array2<f64>) -> Result<Self> {
        Self::new(None, costs)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &Array1<f64> {
        &self.weights
    }

    pub fn costs(&self) -> &Array2<f64> {
        &self.costs
    }

    /// Same weights, costs replaced by their normalized ranks.
    pub fn ranked(&self) -> Self {
        let ranked = crate::rank::rank_transform(&self.costs)
            .expect("validated costs are square and finite");
        Self {
            weights: self.weights.clone(),
            costs: ranked.into_inner(),
        }
    }

    /// Restriction to the points in `idx` (rows and columns), weights renormalized.
    pub fn subset(&self, idx: &[usize]) -> Result<Self> {
        if idx.is_empty() {
            return Err(Error::Empty);
        }
        let costs = Array2::from_shape_fn((idx.len(), idx.len()), |(i, j)| {
            self.costs[[idx[i], idx[j]]]
        });
        let w: Array1<f64> = idx.iter().map(|&i| self.weights[i]).collect();
        let total = w.sum();
        if total <= 0.0 {
            return Err(Error::WeightSumOutOfTolerance { sum: total });
        }
        Ok(Self {
            weights: w / total,
            costs,
        })
    }
}

/// Validates a cost matrix and optional weights into an [`MMSet`].
pub fn validate_mmset(weights: Option<Array1<f64>>, costs: Array2<f64>) -> Result<MMSet> {
    MMSet::new(weights, costs)
}

pub(crate) fn check_square_finite(costs: &Array2<f64>) -> Result<()> {
    let (rows, cols) = costs.dim();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::Empty);
    }
    if let Some(((row, col), _)) = costs.indexed_iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { row, col });
    }
    Ok(())
}

/// Checks a probability vector of length `n`, fixing drifts up to [`RENORMALIZE_TOL`].
pub fn normalize_weights(w: Array1<f64>, n: usize) -> Result<Array1<f64>> {
    if w.len() != n {
        return Err(Error::WeightLength {
            expected: n,
            got: w.len(),
        });
    }
    for (index, &value) in w.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { row: index, col: 0 });
        }
        if value < 0.0 {
            return Err(Error::NegativeWeight { index, value });
        }
    }
    let sum = w.sum();
    if (sum - 1.0).abs() > RENORMALIZE_TOL {
        return Err(Error::WeightSumOutOfTolerance { sum });
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        Ok(w / sum)
    } else {
        Ok(w)
    }
}
