//! Matrix, weight, graph and corpus files.
//!
//! Matrices are either CSV (comma-separated decimal rows, no header) or
//! binary: `AEM1`, rows and cols as `u64` little endian, then row-major
//! `f64` little endian. After the magic the payload is exactly `16 + 8 * rows * cols`
//! bytes. CSV values are written in shortest round-trip form, so both
//! encodings reproduce the matrix bit for bit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anchor_energy::graphs::read_edge_list;
use anchor_energy::{geodesic_cost, Error, Graph, MMSet};
use ndarray::{Array1, Array2};

use crate::error::{CliError, CliResult};

pub const MAGIC: &[u8; 4] = b"AEM1";
const HEADER_LEN: usize = 16;

pub fn parse_csv_matrix(text: &str) -> Result<Array2<f64>, Error> {
    let mut values = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut count = 0;
        for (colno, field) in line.split(',').enumerate() {
            let field = field.trim();
            let v = field.parse::<f64>().map_err(|e| Error::Parse {
                location: format!("line {}, column {}", lineno + 1, colno + 1),
                message: format!("{field:?}: {e}"),
            })?;
            values.push(v);
            count += 1;
        }
        match cols {
            None => cols = Some(count),
            Some(c) if c != count => {
                return Err(Error::Parse {
                    location: format!("line {}", lineno + 1),
                    message: format!("row has {count} values, expected {c}"),
                })
            }
            Some(_) => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(Error::Empty)?;
    Ok(Array2::from_shape_vec((rows, cols), values).expect("rows * cols values"))
}

pub fn write_csv_matrix(m: &Array2<f64>) -> String {
    let mut out = String::with_capacity(m.len() * 20);
    for row in m.rows() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn encode_binary(m: &Array2<f64>) -> Vec<u8> {
    let (rows, cols) = m.dim();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * m.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(rows as u64).to_le_bytes());
    out.extend_from_slice(&(cols as u64).to_le_bytes());
    for v in m.iter() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_binary(bytes: &[u8]) -> Result<Array2<f64>, Error> {
    let parse = |offset: usize, message: String| Error::Parse {
        location: format!("byte {offset}"),
        message,
    };
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(parse(0, "missing AEM1 magic".into()));
    }
    if bytes.len() < 4 + HEADER_LEN {
        return Err(parse(bytes.len(), "truncated header".into()));
    }
    let dim = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let (rows, cols) = (dim(4), dim(12));
    let expected = usize::try_from(rows)
        .ok()
        .zip(usize::try_from(cols).ok())
        .and_then(|(r, c)| r.checked_mul(c))
        .and_then(|rc| rc.checked_mul(8))
        .and_then(|b| b.checked_add(4 + HEADER_LEN))
        .ok_or_else(|| parse(4, format!("dimensions {rows}x{cols} overflow")))?;
    if bytes.len() != expected {
        return Err(parse(
            bytes.len().min(expected),
            format!(
                "expected {expected} bytes for {rows}x{cols}, found {}",
                bytes.len()
            ),
        ));
    }
    let values = bytes[4 + HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Array2::from_shape_vec((rows as usize, cols as usize), values).expect("checked length"))
}

/// Reads a matrix, detecting the binary format by its magic bytes.
pub fn read_matrix(path: &Path) -> CliResult<Array2<f64>> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let parsed = if bytes.starts_with(MAGIC) {
        decode_binary(&bytes)
    } else {
        std::str::from_utf8(&bytes)
            .map_err(|e| Error::Parse {
                location: format!("byte {}", e.valid_up_to()),
                message: "not UTF-8 text".into(),
            })
            .and_then(parse_csv_matrix)
    };
    parsed.map_err(|e| CliError::at(path, e))
}

/// Writes CSV, or binary when the extension is `bin` or `aem`.
pub fn write_matrix(path: &Path, m: &Array2<f64>) -> CliResult<()> {
    let bytes = if is_binary_path(path) {
        encode_binary(m)
    } else {
        write_csv_matrix(m).into_bytes()
    };
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn is_binary_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("bin" | "aem")
    )
}

/// Reals separated by commas or whitespace; `#` lines are comments.
pub fn parse_reals(text: &str) -> Result<Vec<f64>, Error> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for field in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if field.is_empty() {
                continue;
            }
            out.push(field.parse::<f64>().map_err(|e| Error::Parse {
                location: format!("line {}", lineno + 1),
                message: format!("{field:?}: {e}"),
            })?);
        }
    }
    Ok(out)
}

pub fn read_reals(path: &Path) -> CliResult<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_reals(&text).map_err(|e| CliError::at(path, e))
}

/// Builds a validated MMSet from a cost file and optional weights file.
/// With `rank`, costs are replaced by their normalized ranks.
pub fn load_mmset(cost: &Path, weights: Option<&Path>, rank: bool) -> CliResult<MMSet> {
    let costs = read_matrix(cost)?;
    finish_mmset(costs, weights, rank, cost)
}

/// Like [`load_mmset`] with geodesic costs of an edge-list graph.
pub fn load_graph_mmset(graph: &Path, weights: Option<&Path>, rank: bool) -> CliResult<MMSet> {
    let g = read_edge_list(graph)?;
    let costs = geodesic_cost(&g).map_err(|e| CliError::at(graph, e))?;
    finish_mmset(costs, weights, rank, graph)
}

fn finish_mmset(
    costs: Array2<f64>,
    weights: Option<&Path>,
    rank: bool,
    src: &Path,
) -> CliResult<MMSet> {
    let w = weights.map(read_reals).transpose()?.map(Array1::from);
    let s = MMSet::new(w, costs).map_err(|e| CliError::at(src, e))?;
    Ok(if rank { s.ranked() } else { s })
}

/// Loads an item by extension: `edges`/`el` are edge lists, anything else a matrix.
pub fn load_item(path: &Path, rank: bool) -> CliResult<MMSet> {
    if is_edge_list_path(path) {
        load_graph_mmset(path, None, rank)
    } else {
        load_mmset(path, None, rank)
    }
}

pub fn is_edge_list_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("edges" | "el")
    )
}

/// Files named by a directory (sorted, hidden files skipped) or by a
/// manifest listing one path per line, relative to the manifest.
pub fn list_inputs(path: &Path) -> CliResult<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files = Vec::new();
        for entry in std::fs::read_dir(path).map_err(|e| CliError::io(path, e))? {
            let entry = entry.map_err(|e| CliError::io(path, e))?;
            let p = entry.path();
            let hidden = p
                .file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with('.'));
            if p.is_file() && !hidden {
                files.push(p);
            }
        }
        files.sort();
        Ok(files)
    } else {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| base.join(l))
            .collect())
    }
}

/// Every graph of a directory or manifest.
pub fn load_graph_family(path: &Path) -> CliResult<Vec<Graph>> {
    list_inputs(path)?
        .iter()
        .map(|p| read_edge_list(p).map_err(CliError::from))
        .collect()
}
