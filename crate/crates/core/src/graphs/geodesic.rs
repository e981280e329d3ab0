use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use ndarray::Array2;
use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn bfs(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0.0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if dist[v].is_infinite() {
                dist[v] = dist[u] + 1.0;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry(0.0, source));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry(nd, v));
            }
        }
    }
    dist
}

/// All-pairs shortest-path distances. BFS per source on unit-weight graphs,
/// Dijkstra otherwise.
pub fn geodesic_cost(g: &Graph) -> Result<Array2<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Empty);
    }
    let components = g.component_count();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let adj = g.adjacency();
    let unit = g.is_unit_weighted();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            if unit {
                bfs(&adj, s)
            } else {
                dijkstra(&adj, s)
            }
        })
        .collect();
    Ok(Array2::from_shape_vec((n, n), rows.concat()).expect("n*n distances"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn path() {
        let g = Graph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            geodesic_cost(&g).unwrap(),
            array![[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
        );
    }

    #[test]
    fn triangle() {
        let g = Graph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = geodesic_cost(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c[[i, j]], if i == j { 0.0 } else { 1.0 });
            }
        }
    }

    #[test]
    fn disconnected() {
        let g = Graph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            geodesic_cost(&g).unwrap_err(),
            Error::Disconnected { components: 2 }
        );
    }

    #[test]
    fn weighted_shortcut() {
        let g = Graph::new(3, [(0, 1, 1.0), (1, 2, 1.5), (0, 2, 3.0)]).unwrap();
        let c = geodesic_cost(&g).unwrap();
        assert_eq!(c[[0, 2]], 2.5);
        assert_eq!(c[[2, 0]], 2.5);
    }
}
