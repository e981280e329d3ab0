use ndarray::{Array1, Array2, Axis};

use crate::error::{Error, Result};

/// A nonnegative coupling with its prescribed marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    matrix: Array2<f64>,
    row_marginal: Array1<f64>,
    col_marginal: Array1<f64>,
}

impl TransportPlan {
    /// Wraps a coupling. Only shape and sign are checked here; marginal
    /// accuracy is reported by [`marginal_residual`](Self::marginal_residual).
    pub fn new(
        matrix: Array2<f64>,
        row_marginal: Array1<f64>,
        col_marginal: Array1<f64>,
    ) -> Result<Self> {
        let (n, m) = matrix.dim();
        if row_marginal.len() != n {
            return Err(Error::WeightLength {
                expected: n,
                got: row_marginal.len(),
            });
        }
        if col_marginal.len() != m {
            return Err(Error::WeightLength {
                expected: m,
                got: col_marginal.len(),
            });
        }
        if let Some(((row, col), _)) = matrix
            .indexed_iter()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::NonFinite { row, col });
        }
        Ok(Self {
            matrix,
            row_marginal,
            col_marginal,
        })
    }

    /// The product coupling `a bᵀ`.
    pub fn product(a: &Array1<f64>, b: &Array1<f64>) -> Self {
        let matrix = Array2::from_shape_fn((a.len(), b.len()), |(i, j)| a[i] * b[j]);
        Self {
            matrix,
            row_marginal: a.clone(),
            col_marginal: b.clone(),
        }
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<f64> {
        self.matrix
    }

    pub fn row_marginal(&self) -> &Array1<f64> {
        &self.row_marginal
    }

    pub fn col_marginal(&self) -> &Array1<f64> {
        &self.col_marginal
    }

    pub fn dim(&self) -> (usize, usize) {
        self.matrix.dim()
    }

    /// Largest absolute deviation of any row or column sum from its target.
    pub fn marginal_residual(&self) -> f64 {
        let rows = self.matrix.sum_axis(Axis(1));
        let cols = self.matrix.sum_axis(Axis(0));
        let r = rows
            .iter()
            .zip(&self.row_marginal)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        let c = cols
            .iter()
            .zip(&self.col_marginal)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        r.max(c)
    }

    /// `⟨P, M⟩`.
    pub fn cost(&self, costs: &Array2<f64>) -> f64 {
        (&self.matrix * costs).sum()
    }

    /// `H(P) = -Σ P_ij (log P_ij - 1)`, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        -self
            .matrix
            .iter()
            .map(|&p| if p > 0.0 { p * (p.ln() - 1.0) } else { 0.0 })
            .sum::<f64>()
    }
}
