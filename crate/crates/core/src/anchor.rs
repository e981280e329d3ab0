//! Anchor features.
//!
//! Every point `i` of an MMSet `(a, C)` is represented by the 1D distribution
//! of its costs to all points, `sum_j a_j δ(C_ij)`. The set itself becomes a
//! weighted family of such distributions. Families are also built directly
//! from arbitrary 1D samples (e.g. per-graph degree distributions).

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::mmset::{normalize_weights, MMSet, WEIGHT_SUM_TOL};

/// A weighted 1D empirical distribution, atoms sorted ascending by value.
///
/// Ties in value keep the original point order, so every downstream
/// computation sees the same atom sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorDistribution {
    values: Vec<f64>,
    weights: Vec<f64>,
    points: Vec<usize>,
}

impl AnchorDistribution {
    /// Builds a distribution from `(value, weight)` atoms in point order.
    pub fn new(values: &[f64], weights: &[f64]) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::WeightLength {
                expected: values.len(),
                got: weights.len(),
            });
        }
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        let w = normalize_weights(Array1::from(weights.to_vec()), weights.len())?;
        Ok(Self::from_validated(values, w.as_slice().unwrap()))
    }

    /// Uniform weights over the given samples.
    pub fn uniform(values: &[f64]) -> Result<Self> {
        let w = vec![1.0 / values.len().max(1) as f64; values.len()];
        Self::new(values, &w)
    }

    fn from_validated(values: &[f64], weights: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        // stable sort: equal values stay in point order
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        Self {
            values: order.iter().map(|&j| values[j]).collect(),
            weights: order.iter().map(|&j| weights[j]).collect(),
            points: order,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Atom values, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Atom masses, aligned with [`values`](Self::values).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Original point index of each atom.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// CDF after each atom: `cdf[t] = sum of the first t atom weights`, `cdf[0] = 0`.
    ///
    /// Summation is strictly sequential, so equal prefixes across anchors
    /// produce bit-identical values.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = 0.0;
        out.push(acc);
        for &w in &self.weights {
            acc += w;
            out.push(acc);
        }
        out
    }

    /// Right-continuous CDF evaluated at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= x);
        self.weights[..k].iter().sum()
    }
}

/// A weighted family of anchor distributions (an element of P(P(R))).
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorFamily {
    weights: Vec<f64>,
    anchors: Vec<AnchorDistribution>,
}

impl AnchorFamily {
    pub fn new(weights: Vec<f64>, anchors: Vec<AnchorDistribution>) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::Empty);
        }
        let w = normalize_weights(Array1::from(weights), anchors.len())?;
        Ok(Self {
            weights: w.to_vec(),
            anchors,
        })
    }

    /// A family with one unit of mass per distribution.
    pub fn uniform(anchors: Vec<AnchorDistribution>) -> Result<Self> {
        let n = anchors.len();
        Self::new(vec![1.0 / n.max(1) as f64; n], anchors)
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn anchors(&self) -> &[AnchorDistribution] {
        &self.anchors
    }

    /// Total number of atoms over all anchors.
    pub fn atom_count(&self) -> usize {
        self.anchors.iter().map(|a| a.len()).sum()
    }

    pub(crate) fn mass_ok(&self) -> bool {
        (self.weights.iter().sum::<f64>() - 1.0).abs() <= WEIGHT_SUM_TOL
    }
}

/// The anchor-feature representation of `s`: anchor `i` carries the atoms
/// `{(C_ij, a_j)}` and the family weight `a_i`.
pub fn anchor_family(s: &MMSet) -> AnchorFamily {
    let c = s.costs();
    let a = s.weights().as_slice().expect("contiguous weights");
    let anchors = (0..s.len())
        .map(|i| {
            let row: Vec<f64> = c.row(i).to_vec();
            AnchorDistribution::from_validated(&row, a)
        })
        .collect();
    AnchorFamily {
        weights: a.to_vec(),
        anchors,
    }
}
