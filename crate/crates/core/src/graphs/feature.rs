use super::Graph;
use crate::anchor::AnchorDistribution;
use crate::error::Result;

/// Per-node statistic used to summarize a graph as a 1D distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureKind {
    Degree,
    /// Local clustering coefficient; 0 for nodes of degree < 2.
    Clustering,
}

/// Uniform-weight distribution of a per-node statistic.
pub fn graph_feature(g: &Graph, kind: FeatureKind) -> Result<AnchorDistribution> {
    let values: Vec<f64> = match kind {
        FeatureKind::Degree => g.degrees().into_iter().map(|d| d as f64).collect(),
        FeatureKind::Clustering => clustering(g),
    };
    AnchorDistribution::uniform(&values)
}

fn clustering(g: &Graph) -> Vec<f64> {
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|l| l.into_iter().map(|e| e.0).collect())
        .collect();
    (0..g.node_count())
        .map(|v| {
            let nb = &adj[v];
            let d = nb.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (x, &u) in nb.iter().enumerate() {
                for &w in &nb[x + 1..] {
                    if adj[u].binary_search(&w).is_ok() {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        })
        .collect()
}
