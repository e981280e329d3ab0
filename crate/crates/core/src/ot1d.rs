//! Exact optimal transport between weighted 1D distributions.

use std::fmt;

use crate::anchor::AnchorDistribution;
use crate::error::{Error, Result};

/// Ground-cost exponent `p` in `|x - y|^p`. Only 1 and 2 are supported:
/// those are the exponents for which `OT_p^p` is conditionally negative
/// definite and the anchor energy is a valid energy distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent(u32);

impl Exponent {
    pub const ONE: Exponent = Exponent(1);
    pub const TWO: Exponent = Exponent(2);

    pub fn new(p: u32) -> Result<Self> {
        match p {
            1 | 2 => Ok(Exponent(p)),
            _ => Err(Error::InvalidExponent(p)),
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn cost(self, d: f64) -> f64 {
        let d = d.abs();
        if self.0 == 1 {
            d
        } else {
            d * d
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Exponent {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Exponent::new(p)
    }
}

/// `OT_p^p(mu, nu) = ∫_0^1 |Q_mu(u) - Q_nu(u)|^p du` by a two-pointer merge
/// of the quantile functions. Linear in the number of atoms.
pub fn ot1d(mu: &AnchorDistribution, nu: &AnchorDistribution, p: Exponent) -> f64 {
    ot1d_sorted(mu.values(), mu.weights(), nu.values(), nu.weights(), p)
}

/// [`ot1d`] on raw sorted atom slices.
pub fn ot1d_sorted(xs: &[f64], wx: &[f64], ys: &[f64], wy: &[f64], p: Exponent) -> f64 {
    let (mut i, mut j) = (0, 0);
    if xs.is_empty() || ys.is_empty() {
        return 0.0;
    }
    let mut ra = wx[0];
    let mut rb = wy[0];
    let mut total = 0.0;
    loop {
        let step = ra.min(rb);
        total += step * p.cost(xs[i] - ys[j]);
        ra -= step;
        rb -= step;
        if ra <= 0.0 {
            i += 1;
            if i == xs.len() {
                break;
            }
            ra = wx[i];
        }
        if rb <= 0.0 {
            j += 1;
            if j == ys.len() {
                break;
            }
            rb = wy[j];
        }
    }
    total
}
