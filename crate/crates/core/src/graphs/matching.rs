use crate::error::{Error, Result};
use crate::transport::TransportPlan;

/// Row-to-column assignment: `assignment[i]` is the matched column of row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub assignment: Vec<usize>,
}

/// Row-wise argmax of a plan; ties go to the smaller column index.
pub fn extract_matching(plan: &TransportPlan) -> Matching {
    let assignment = plan
        .matrix()
        .rows()
        .into_iter()
        .map(|row| {
            let mut best = 0;
            for (j, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = j;
                }
            }
            best
        })
        .collect();
    Matching { assignment }
}

/// Pearson correlation between node indices `0..n` and their matched indices.
pub fn order_correlation(m: &Matching) -> Result<f64> {
    let x: Vec<f64> = (0..m.assignment.len()).map(|i| i as f64).collect();
    let y: Vec<f64> = m.assignment.iter().map(|&j| j as f64).collect();
    pearson(&x, &y)
}

/// Pearson correlation between `order1[i]` and `order2[assignment[i]]`, for
/// graphs whose node labels differ from their latent order.
pub fn order_correlation_with(m: &Matching, order1: &[f64], order2: &[f64]) -> Result<f64> {
    if order1.len() != m.assignment.len() {
        return Err(Error::InvalidParams(format!(
            "{} row orders for {} matched rows",
            order1.len(),
            m.assignment.len()
        )));
    }
    let y = m
        .assignment
        .iter()
        .map(|&j| {
            order2.get(j).copied().ok_or_else(|| {
                Error::InvalidParams(format!("matched column {j} has no order entry"))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    pearson(order1, &y)
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "correlation needs at least 2 rows, got {n}"
        )));
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn plan(m: ndarray::Array2<f64>) -> TransportPlan {
        let rows = m.sum_axis(ndarray::Axis(1));
        let cols = m.sum_axis(ndarray::Axis(0));
        TransportPlan::new(m, rows, cols).unwrap()
    }

    #[test]
    fn argmax_rules() {
        let m = |a| extract_matching(&plan(a)).assignment;
        assert_eq!(m(array![[0.5, 0.0], [0.0, 0.5]]), vec![0, 1]);
        assert_eq!(m(array![[0.0, 0.5], [0.5, 0.0]]), vec![1, 0]);
        assert_eq!(m(array![[0.25, 0.25], [0.25, 0.25]]), vec![0, 0]);
    }

    #[test]
    fn correlations() {
        let id = Matching {
            assignment: (0..10).collect(),
        };
        assert!((order_correlation(&id).unwrap() - 1.0).abs() < 1e-15);
        let rev = Matching {
            assignment: (0..10).rev().collect(),
        };
        assert!((order_correlation(&rev).unwrap() + 1.0).abs() < 1e-15);
        // x = (0,1,2), y = (0,2,1): cov 0.5/ (1 * 1)
        let m = Matching {
            assignment: vec![0, 2, 1],
        };
        assert!((order_correlation(&m).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate() {
        let m = Matching {
            assignment: vec![0, 0, 0],
        };
        assert_eq!(
            order_correlation(&m).unwrap_err(),
            Error::DegenerateVariance
        );
        let one = Matching {
            assignment: vec![0],
        };
        assert!(matches!(
            order_correlation(&one),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn with_latent_orders() {
        // rows are labeled in reverse latent order, columns in latent order
        let m = Matching {
            assignment: vec![2, 1, 0],
        };
        let c = order_correlation_with(&m, &[2.0, 1.0, 0.0], &[0.0, 1.0, 2.0]).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
    }
}
