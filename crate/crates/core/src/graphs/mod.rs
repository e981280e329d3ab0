//! Graphs as sources of measured metric sets and of 1D feature distributions.

mod edgelist;
mod feature;
mod generate;
mod geodesic;
mod matching;

pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use feature::{graph_feature, FeatureKind};
pub use generate::{ba_generate, er_generate};
pub use geodesic::geodesic_cost;
pub use matching::{extract_matching, order_correlation, order_correlation_with, Matching};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// An undirected graph with positive edge weights; each pair appears once,
/// stored as `(u, v, w)` with `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    /// Validates and canonicalizes an edge list. Repeated pairs (in either
    /// direction) are merged when their weights agree and rejected otherwise.
    pub fn new(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
        let mut out = Vec::new();
        for (u, v, w) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidParams(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at node {u}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            let key = (u.min(v), u.max(v));
            match seen.get(&key) {
                Some(&prev) if prev == w => continue,
                Some(&prev) => {
                    return Err(Error::InvalidParams(format!(
                        "edge {key:?} listed with weights {prev} and {w}"
                    )))
                }
                None => {
                    seen.insert(key, w);
                    out.push((key.0, key.1, w));
                }
            }
        }
        Ok(Self {
            node_count,
            edges: out,
        })
    }

    /// Unit-weight graph.
    pub fn unweighted(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::new(node_count, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1.0)
    }

    /// Sorted neighbor lists with edge weights.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_by_key(|e| e.0);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Relabels node `u` as `perm[u]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.node_count {
            return Err(Error::InvalidParams("permutation length mismatch".into()));
        }
        let mut hit = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidParams("not a permutation".into()));
            }
        }
        Self::new(
            self.node_count,
            self.edges.iter().map(|&(u, v, w)| (perm[u], perm[v], w)),
        )
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.node_count];
        let mut components = 0;
        let mut stack = Vec::new();
        for s in 0..self.node_count {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(v, _) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }
}
