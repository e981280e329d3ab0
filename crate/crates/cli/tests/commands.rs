//! The `anchor` binary end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use anchor_energy::graphs::write_edge_list;
use anchor_energy::Graph;
use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn anchor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anchor"))
        .args(args)
        .env_remove("ANCHOR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = anchor(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn write_csv(path: &Path, m: &Array2<f64>) {
    fs::write(path, anchor_cli::io::write_csv_matrix(m)).unwrap();
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn matrix(&self, name: &str, m: &Array2<f64>) -> PathBuf {
        let p = self.path(name);
        write_csv(&p, m);
        p
    }

    fn random_metric(&self, name: &str, n: usize, seed: u64) -> PathBuf {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = Array2::from_shape_fn((n, 2), |_| rng.gen::<f64>());
        self.matrix(name, &anchor_energy::synthetic::euclidean_costs(&pts))
    }
}

fn two_point(scale: f64) -> Array2<f64> {
    ndarray::array![[0.0, scale], [scale, 0.0]]
}

#[test]
fn dist_prints_the_two_point_energy() {
    let f = Fixture::new();
    let a = f.matrix("a.csv", &two_point(1.0));
    let b = f.matrix("b.csv", &two_point(2.0));
    assert_eq!(
        ok(&["dist", "--metric", "ae", "--c1", s(&a), "--c2", s(&b)]).trim(),
        "1.0"
    );
}

#[test]
fn sweep_and_naive_agree_to_nine_digits() {
    let f = Fixture::new();
    for seed in 0..5 {
        let a = f.random_metric("a.csv", 9 + seed as usize, 2 * seed);
        let b = f.random_metric("b.csv", 14, 2 * seed + 1);
        let sweep: f64 = ok(&["dist", "--metric", "ae", "--c1", s(&a), "--c2", s(&b)])
            .trim()
            .parse()
            .unwrap();
        let naive: f64 = ok(&["dist", "--metric", "ae-naive", "--c1", s(&a), "--c2", s(&b)])
            .trim()
            .parse()
            .unwrap();
        assert_eq!(format!("{sweep:.8e}"), format!("{naive:.8e}"));
    }
}

#[test]
fn solver_metrics_require_eps() {
    let f = Fixture::new();
    let a = f.matrix("a.csv", &two_point(1.0));
    for metric in ["aw", "gw"] {
        let o = anchor(&["dist", "--metric", metric, "--c1", s(&a), "--c2", s(&a)]);
        assert_eq!(o.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&o.stderr).contains("--eps"));
    }
}

#[test]
fn aw_prints_cost_and_objective() {
    let f = Fixture::new();
    let a = f.random_metric("a.csv", 6, 1);
    let b = f.random_metric("b.csv", 7, 2);
    let line = ok(&[
        "dist",
        "--metric",
        "aw",
        "--eps",
        "0.01",
        "--c1",
        s(&a),
        "--c2",
        s(&b),
    ]);
    let fields: Vec<f64> = line
        .split_whitespace()
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(fields.len(), 2);
    // entropy is positive, so the regularized objective sits below the cost
    assert!(fields[1] < fields[0]);
}

#[test]
fn iteration_limit_exits_two_with_a_value() {
    let f = Fixture::new();
    let a = f.random_metric("a.csv", 8, 3);
    let b = f.random_metric("b.csv", 8, 4);
    let o = anchor(&[
        "dist",
        "--metric",
        "aw",
        "--eps",
        "1e-4",
        "--max-iter",
        "2",
        "--c1",
        s(&a),
        "--c2",
        s(&b),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o)
        .trim()
        .split_whitespace()
        .all(|v| v.parse::<f64>().is_ok()));
}

#[test]
fn malformed_matrix_exits_one() {
    let f = Fixture::new();
    let bad = f.path("bad.csv");
    fs::write(&bad, "0,1,2\n1,0,2\n").unwrap();
    let o = anchor(&["dist", "--metric", "ae", "--c1", s(&bad), "--c2", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.csv"));
}

#[test]
fn rank_makes_scaling_invisible() {
    let f = Fixture::new();
    let a = f.random_metric("a.csv", 10, 5);
    let m = anchor_cli::io::read_matrix(&a).unwrap();
    let b = f.matrix("b.csv", &(m * 3.0));
    let ranked = ok(&[
        "dist",
        "--metric",
        "ae",
        "--rank",
        "--c1",
        s(&a),
        "--c2",
        s(&b),
    ]);
    assert_eq!(ranked.trim().parse::<f64>().unwrap(), 0.0);
    let raw = ok(&["dist", "--metric", "ae", "--c1", s(&a), "--c2", s(&b)]);
    assert!(raw.trim().parse::<f64>().unwrap() > 0.0);
}

#[test]
fn json_lines_parse() {
    let f = Fixture::new();
    let a = f.random_metric("a.csv", 5, 6);
    let b = f.random_metric("b.csv", 6, 7);
    for metric in ["ae", "ae-naive", "aw", "gw"] {
        let out = ok(&[
            "dist",
            "--metric",
            metric,
            "--eps",
            "0.05",
            "--json",
            "--c1",
            s(&a),
            "--c2",
            s(&b),
        ]);
        for line in out.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["schemaVersion"], 1);
            assert_eq!(v["command"], "dist");
            assert!(v["result"]["value"].is_f64());
        }
    }
}

fn read_plan(path: &Path) -> Array2<f64> {
    anchor_cli::io::read_matrix(path).unwrap()
}

#[test]
fn aep_plan_on_single_points() {
    let f = Fixture::new();
    let a = f.matrix("a.csv", &Array2::zeros((1, 1)));
    let out = f.path("plan.csv");
    ok(&[
        "plan",
        "--kind",
        "aep",
        "--c1",
        s(&a),
        "--c2",
        s(&a),
        "--out",
        s(&out),
    ]);
    assert_eq!(fs::read_to_string(&out).unwrap().trim(), "1");
}

#[test]
fn written_plans_meet_their_marginals() {
    let f = Fixture::new();
    let a = f.random_metric("a.csv", 7, 8);
    let b = f.random_metric("b.csv", 5, 9);
    for (kind, tol) in [("aep", 1e-9), ("aw", 1e-7), ("gw", 1e-7)] {
        let out = f.path(&format!("{kind}.bin"));
        ok(&[
            "plan",
            "--kind",
            kind,
            "--eps",
            "0.01",
            "--c1",
            s(&a),
            "--c2",
            s(&b),
            "--out",
            s(&out),
        ]);
        let p = read_plan(&out);
        assert_eq!(p.dim(), (7, 5));
        for r in p.rows() {
            assert!((r.sum() - 1.0 / 7.0).abs() <= tol, "{kind}");
        }
        for c in p.columns() {
            assert!((c.sum() - 0.2).abs() <= tol, "{kind}");
        }
    }
}

#[test]
fn plan_match_reports_a_correlation() {
    let f = Fixture::new();
    let (g1, g2) = (f.path("g1.edges"), f.path("g2.edges"));
    ok(&[
        "gen",
        "--model",
        "ba",
        "--n",
        "60",
        "--seed",
        "1",
        "--out",
        s(&g1),
    ]);
    ok(&[
        "gen",
        "--model",
        "ba",
        "--n",
        "60",
        "--seed",
        "2",
        "--out",
        s(&g2),
    ]);
    let (plan, matching) = (f.path("plan.csv"), f.path("match.txt"));
    let out = ok(&[
        "plan",
        "--kind",
        "aep",
        "--g1",
        s(&g1),
        "--g2",
        s(&g2),
        "--out",
        s(&plan),
        "--match",
        s(&matching),
    ]);
    let r: f64 = out
        .trim()
        .strip_prefix("correlation ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((-1.0..=1.0).contains(&r));
    let assignment: Vec<usize> = fs::read_to_string(&matching)
        .unwrap()
        .lines()
        .map(|l| l.trim().parse().unwrap())
        .collect();
    assert_eq!(assignment.len(), 60);
    assert!(assignment.iter().all(|&j| j < 60));
}

#[test]
fn bench_writes_one_row_per_method_and_size() {
    let out = ok(&[
        "bench",
        "--sizes",
        "32,64",
        "--repeats",
        "1",
        "--gw-eps",
        "1",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("method,n,seconds"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    for method in ["ae", "ae-naive", "aw", "gw"] {
        let mine: Vec<_> = rows.iter().filter(|r| r[0] == method).collect();
        assert_eq!(mine.len(), 2, "{method}");
        assert!(mine.iter().all(|r| r[2].parse::<f64>().unwrap() > 0.0));
    }
    let o = anchor(&["bench", "--sizes", "16"]);
    assert_eq!(o.status.code(), Some(1));
}

fn write_graphs(dir: &Path, model: &str, count: usize, seed: u64) {
    ok(&[
        "gen",
        "--model",
        model,
        "--n",
        "40",
        "--seed",
        &seed.to_string(),
        "--count",
        &count.to_string(),
        "--out",
        s(dir),
    ]);
}

#[test]
fn test2_on_identical_families() {
    let f = Fixture::new();
    let dir = f.path("ba");
    write_graphs(&dir, "ba", 5, 10);
    let out = ok(&[
        "test2",
        "--dir1",
        s(&dir),
        "--dir2",
        s(&dir),
        "--nperm",
        "49",
    ]);
    let report: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(report["statistic"].as_f64().unwrap().abs(), 0.0);
    assert_eq!(report["pValue"], 1.0);
    assert_eq!(report["reject"], false);
    let o = anchor(&[
        "test2",
        "--dir1",
        s(&dir),
        "--dir2",
        s(&dir),
        "--nperm",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn test2_separates_generators_and_is_thread_independent() {
    let f = Fixture::new();
    let (er, ba) = (f.path("er"), f.path("ba"));
    ok(&[
        "gen",
        "--model",
        "er",
        "--n",
        "60",
        "--p-edge",
        "0.066",
        "--count",
        "12",
        "--out",
        s(&er),
    ]);
    ok(&[
        "gen",
        "--model",
        "ba",
        "--n",
        "60",
        "--count",
        "12",
        "--seed",
        "100",
        "--out",
        s(&ba),
    ]);
    let run = |threads: &str| {
        ok(&[
            "--threads",
            threads,
            "test2",
            "--dir1",
            s(&er),
            "--dir2",
            s(&ba),
            "--seed",
            "3",
        ])
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let report: Value = serde_json::from_str(one.trim()).unwrap();
    assert_eq!(report["reject"], true);
}

/// Ten relabeled cycles and ten relabeled paths on 60 nodes, with labels.
fn cycle_path_corpus(f: &Fixture) -> (PathBuf, PathBuf) {
    let corpus = f.path("corpus");
    fs::create_dir(&corpus).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut labels = String::new();
    for k in 0..10 {
        for (class, closed) in [("cycle", true), ("path", false)] {
            let n = 60;
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut edges: Vec<(usize, usize)> =
                (0..n - 1).map(|v| (perm[v], perm[v + 1])).collect();
            if closed {
                edges.push((perm[n - 1], perm[0]));
            }
            let g = Graph::unweighted(n, edges).unwrap();
            let name = format!("{class}{k:02}.edges");
            fs::write(corpus.join(&name), write_edge_list(&g)).unwrap();
            labels.push_str(&format!("{name} {class}\n"));
        }
    }
    let label_path = f.path("labels.txt");
    fs::write(&label_path, labels).unwrap();
    (corpus, label_path)
}

#[test]
fn knn_separates_cycles_from_paths() {
    let f = Fixture::new();
    let (corpus, labels) = cycle_path_corpus(&f);
    let pairs = f.path("pairs.csv");
    let out = ok(&[
        "knn",
        "--corpus",
        s(&corpus),
        "--labels",
        s(&labels),
        "--metric",
        "ae",
        "--pairs",
        s(&pairs),
    ]);
    let summary: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(summary["result"]["top1"], 1.0);
    assert_eq!(summary["result"]["items"], 20);
    let csv = fs::read_to_string(&pairs).unwrap();
    assert_eq!(csv.lines().count(), 1 + 190);
    assert_eq!(csv.lines().next(), Some("item1,item2,distance,seconds"));
}

#[test]
fn knn_p2_routes_to_the_naive_evaluator() {
    let f = Fixture::new();
    let (corpus, labels) = cycle_path_corpus(&f);
    let base = [
        "knn",
        "--corpus",
        s(&corpus),
        "--labels",
        s(&labels),
        "--metric",
        "ae",
    ];
    let p1: Value = serde_json::from_str(ok(&base).trim()).unwrap();
    let mut args = base.to_vec();
    args.extend(["--p", "2"]);
    let p2: Value = serde_json::from_str(ok(&args).trim()).unwrap();
    assert_eq!(p2["parameters"]["evaluator"], "ae-naive");
    assert_eq!(p1["parameters"]["evaluator"], "ae");
    let keys = |v: &Value| {
        v["result"]
            .as_object()
            .unwrap()
            .keys()
            .cloned()
            .collect::<Vec<_>>()
    };
    assert_eq!(keys(&p1), keys(&p2));
}

#[test]
fn knn_needs_two_items() {
    let f = Fixture::new();
    let corpus = f.path("one");
    fs::create_dir(&corpus).unwrap();
    write_csv(&corpus.join("x.csv"), &two_point(1.0));
    let labels = f.path("labels.txt");
    fs::write(&labels, "x a\n").unwrap();
    let o = anchor(&[
        "knn",
        "--corpus",
        s(&corpus),
        "--labels",
        s(&labels),
        "--metric",
        "ae",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 2"));
}

#[test]
fn knn_distances_do_not_depend_on_threads() {
    let f = Fixture::new();
    let corpus = f.path("c");
    fs::create_dir(&corpus).unwrap();
    let mut labels = String::new();
    for k in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let n = rng.gen_range(5..12);
        let pts = Array2::from_shape_fn((n, 2), |_| rng.gen::<f64>());
        write_csv(
            &corpus.join(format!("m{k}.csv")),
            &anchor_energy::synthetic::euclidean_costs(&pts),
        );
        labels.push_str(&format!("m{k} {}\n", k % 2));
    }
    let label_path = f.path("labels.txt");
    fs::write(&label_path, labels).unwrap();
    let distances = |threads: &str, metric: &str| -> Vec<String> {
        let pairs = f.path(&format!("pairs-{threads}-{metric}.csv"));
        ok(&[
            "--threads",
            threads,
            "knn",
            "--corpus",
            s(&corpus),
            "--labels",
            s(&label_path),
            "--metric",
            metric,
            "--eps",
            "0.01",
            "--pairs",
            s(&pairs),
        ]);
        fs::read_to_string(&pairs)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    for metric in ["ae", "aw", "gw"] {
        assert_eq!(distances("1", metric), distances("4", metric), "{metric}");
    }
}

#[test]
fn gen_writes_edge_lists() {
    let f = Fixture::new();
    let one = ok(&[
        "gen", "--model", "ba", "--n", "200", "--m", "2", "--seed", "4",
    ]);
    let g = anchor_energy::graphs::parse_edge_list(&one).unwrap();
    assert_eq!(g.node_count(), 200);
    assert_eq!(g.edge_count(), 396);
    let dir = f.path("many");
    ok(&[
        "gen",
        "--model",
        "er",
        "--n",
        "30",
        "--count",
        "3",
        "--out",
        s(&dir),
    ]);
    let mut names: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["er_0000.edges", "er_0001.edges", "er_0002.edges"]);
    // same seed, same graph
    assert_eq!(
        one,
        ok(&["gen", "--model", "ba", "--n", "200", "--m", "2", "--seed", "4"])
    );
}

#[test]
fn geodesic_and_convert_round_trip() {
    let f = Fixture::new();
    let g = f.path("g.edges");
    fs::write(&g, "# nodes: 4\n0 1\n1 2 2.5\n2 3\n").unwrap();
    let (csv, bin, back) = (f.path("d.csv"), f.path("d.bin"), f.path("back.csv"));
    ok(&["geodesic", "--graph", s(&g), "--out", s(&csv)]);
    let d = read_plan(&csv);
    assert_eq!(d[[0, 3]], 4.5);
    ok(&["convert", "--input", s(&csv), "--output", s(&bin)]);
    assert_eq!(&fs::read(&bin).unwrap()[..4], b"AEM1");
    ok(&["convert", "--input", s(&bin), "--output", s(&back)]);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&back).unwrap());
    let disconnected = f.path("split.edges");
    fs::write(&disconnected, "# nodes: 4\n0 1\n2 3\n").unwrap();
    let o = anchor(&["geodesic", "--graph", s(&disconnected), "--out", s(&csv)]);
    assert_eq!(o.status.code(), Some(1));
}
