use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anchor_energy::{Error, Exponent};
use rayon::prelude::*;
use serde_json::json;

use super::{emit, status};
use crate::args::KnnArgs;
use crate::error::{CliError, CliResult};
use crate::io::{is_edge_list_path, list_inputs, load_item};
use crate::metric::{evaluate, Metric};
use crate::record::RunRecord;

const TOP_K: [usize; 3] = [1, 3, 5];

pub fn run(args: &KnnArgs, out: &mut dyn Write) -> CliResult<i32> {
    let p = Exponent::new(args.p)?;
    let cfg = match args.metric.default_eps() {
        Some(default) => Some(args.solver.config(args.eps.unwrap_or(default))?),
        None => None,
    };

    let items = corpus_items(&args.corpus, &args.labels)?;
    if items.len() < 2 {
        return Err(Error::InvalidParams(format!(
            "leave-one-out retrieval needs at least 2 items, found {}",
            items.len()
        ))
        .into());
    }
    let labels = read_labels(&args.labels)?;
    let item_labels = items
        .iter()
        .map(|path| {
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default();
            let stem = path
                .file_stem()
                .and_then(|n| n.to_str())
                .unwrap_or_default();
            labels
                .get(name)
                .or_else(|| labels.get(stem))
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("no label for corpus item {name}")))
        })
        .collect::<CliResult<Vec<String>>>()?;
    let sets = items
        .iter()
        .map(|p| load_item(p, args.rank))
        .collect::<CliResult<Vec<_>>>()?;

    let n = sets.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let start = Instant::now();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| {
            let t = Instant::now();
            let ev = evaluate(args.metric, &sets[i], &sets[j], p, cfg.as_ref())?;
            Ok((ev.value, t.elapsed().as_secs_f64(), ev.converged))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let seconds = start.elapsed().as_secs_f64();

    let mut dist = vec![vec![0.0; n]; n];
    for (&(i, j), &(d, _, _)) in pairs.iter().zip(&results) {
        dist[i][j] = d;
        dist[j][i] = d;
    }
    let accuracy = top_k_accuracy(&dist, &item_labels);
    let non_converged = results.iter().filter(|r| !r.2).count();

    if let Some(path) = &args.pairs {
        let mut csv = String::from("item1,item2,distance,seconds\n");
        for (&(i, j), &(d, s, _)) in pairs.iter().zip(&results) {
            writeln!(
                csv,
                "{},{},{d},{s}",
                display_name(&items[i]),
                display_name(&items[j])
            )
            .unwrap();
        }
        std::fs::write(path, csv).map_err(|e| CliError::io(path, e))?;
    }

    let effective = if args.metric == Metric::Ae && p != Exponent::ONE {
        "ae-naive"
    } else {
        args.metric.name()
    };
    let params = json!({
        "metric": args.metric.name(),
        "evaluator": effective,
        "p": args.p,
        "eps": cfg.map(|c| c.epsilon),
        "rank": args.rank,
        "corpus": args.corpus,
    });
    let result = json!({
        "items": n,
        "pairs": pairs.len(),
        "top1": accuracy[0],
        "top3": accuracy[1],
        "top5": accuracy[2],
        "nonConverged": non_converged,
    });
    let line = RunRecord::new("knn", params, seconds, result).to_line()?;
    if let Some(path) = &args.summary {
        std::fs::write(path, format!("{line}\n")).map_err(|e| CliError::io(path, e))?;
    }
    emit(out, &line)?;
    Ok(status(non_converged == 0))
}

/// Fraction of items whose label occurs among their `k` nearest other items,
/// for each `k` in [`TOP_K`]. Distance ties go to the smaller index.
pub fn top_k_accuracy(dist: &[Vec<f64>], labels: &[String]) -> [f64; 3] {
    let n = dist.len();
    let mut hits = [0usize; 3];
    for i in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        others.sort_by(|&a, &b| dist[i][a].total_cmp(&dist[i][b]).then(a.cmp(&b)));
        for (h, &k) in hits.iter_mut().zip(&TOP_K) {
            if others.iter().take(k).any(|&j| labels[j] == labels[i]) {
                *h += 1;
            }
        }
    }
    hits.map(|h| h as f64 / n as f64)
}

fn corpus_items(corpus: &Path, labels: &Path) -> CliResult<Vec<PathBuf>> {
    let labels = labels.canonicalize().ok();
    Ok(list_inputs(corpus)?
        .into_iter()
        .filter(|p| {
            let known = is_edge_list_path(p)
                || matches!(
                    p.extension().and_then(|e| e.to_str()),
                    Some("csv" | "bin" | "aem")
                );
            known && p.canonicalize().ok() != labels
        })
        .collect())
}

fn read_labels(path: &Path) -> CliResult<HashMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty());
        match (fields.next(), fields.next(), fields.next()) {
            (Some(item), Some(label), None) => {
                out.insert(item.to_string(), label.to_string());
            }
            _ => {
                return Err(CliError::at(
                    path,
                    Error::Parse {
                        location: format!("line {}", lineno + 1),
                        message: "expected `item label`".into(),
                    },
                ))
            }
        }
    }
    Ok(out)
}

fn display_name(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}
