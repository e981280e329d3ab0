//! Comparison of probability measures on heterogeneous spaces through anchor
//! features.
//!
//! A measured metric set ([`MMSet`]) is a probability vector over `n` points
//! together with an `n×n` cost matrix. Each point is summarized by the 1D
//! distribution of its costs to every point (its *anchor distribution*), so
//! any two sets can be compared in the common space of distributions over
//! distributions on the line:
//!
//! - [`anchor_energy`]: energy distance with the 1D Wasserstein ground cost,
//!   computed exactly by a sweep line in `O((n² + m²) log(nm))` for `p = 1`.
//! - [`anchor_wasserstein`]: entropic optimal transport between anchor
//!   families (log-domain Sinkhorn).
//! - [`aep`]: the anchor energy plan, an average of local 1D couplings.
//! - [`entropic_gw`]: entropic Gromov-Wasserstein baseline.
//! - [`rank_transform`]: scale-free costs for robust variants.
//! - [`stats`]: permutation two-sample tests between families of distributions.
//! - [`graphs`]: graph generators, geodesic costs and per-node feature
//!   distributions.

pub mod anchor;
pub mod error;
pub mod fenwick;
pub mod graphs;
pub mod mmset;
pub mod ot1d;
pub mod rank;
pub mod stats;
pub mod sweep;
pub mod synthetic;
pub mod transport;

pub use anchor::{anchor_family, AnchorDistribution, AnchorFamily};
pub use error::{Error, Result};
pub use graphs::{
    ba_generate, er_generate, extract_matching, geodesic_cost, graph_feature, order_correlation,
    FeatureKind, Graph, Matching,
};
pub use mmset::{validate_mmset, MMSet};
pub use ot1d::{ot1d, Exponent};
pub use rank::{rank_transform, RankedCosts};
pub use stats::{energy_statistic, permutation_test, TestReport};
pub use sweep::{anchor_energy, cross_sum_naive, cross_sum_sweep, family_energy, Method};
pub use transport::{
    aep, anchor_wasserstein, entropic_gw, sinkhorn_log, SolverConfig, TransportPlan,
};
