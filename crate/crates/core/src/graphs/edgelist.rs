//! Text edge lists: one `u v [w]` edge per line, zero-based, whitespace
//! separated; `#` starts a comment line. A `# nodes: N` comment fixes the node
//! count so trailing isolated nodes survive a round trip; otherwise the count
//! is the largest index plus one.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared = None;
    let mut max_index = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let err = |message: String| Error::Parse {
            location: format!("line {}", lineno + 1),
            message,
        };
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("nodes:") {
                declared = Some(
                    n.trim()
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad node count: {e}")))?,
                );
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!(
                "expected `u v [w]`, found {} fields",
                fields.len()
            )));
        }
        let node = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| err(format!("bad node index {s:?}: {e}")))
        };
        let (u, v) = (node(fields[0])?, node(fields[1])?);
        let w = match fields.get(2) {
            Some(s) => s
                .parse::<f64>()
                .map_err(|e| err(format!("bad weight {s:?}: {e}")))?,
            None => 1.0,
        };
        max_index = Some(max_index.unwrap_or(0).max(u).max(v));
        edges.push((u, v, w));
    }
    let inferred = max_index.map_or(0, |m| m + 1);
    let node_count = match declared {
        Some(n) if n < inferred => {
            return Err(Error::Parse {
                location: "header".into(),
                message: format!(
                    "declared {n} nodes but edges reference node {}",
                    inferred - 1
                ),
            })
        }
        Some(n) => n,
        None => inferred,
    };
    Graph::new(node_count, edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

/// Serializes with a `# nodes:` header; weights are omitted on unit graphs.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# nodes: {}\n", g.node_count());
    let unit = g.is_unit_weighted();
    for &(u, v, w) in g.edges() {
        if unit {
            writeln!(out, "{u} {v}").unwrap();
        } else {
            writeln!(out, "{u} {v} {w}").unwrap();
        }
    }
    out
}
