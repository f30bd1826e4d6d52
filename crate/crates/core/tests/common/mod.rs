//! Brute-force reference implementations and seeded graph samplers shared by
//! the integration tests. Nothing here calls into the library's algorithms;
//! only `Graph` is used as a container.

#![allow(dead_code, clippy::needless_range_loop)]

use ordered_communities::{Graph, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Connected graph on 2..=8 nodes: a random spanning tree plus extra edges.
/// Half the samples use small integer weights so equal-length paths (and
/// fractional betweenness) actually occur.
pub fn connected_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=8);
    let integer_weights = rng.random_bool(0.5);
    let weight = |rng: &mut ChaCha8Rng| {
        if integer_weights {
            rng.random_range(1..=3) as f64
        } else {
            rng.random_range(0.1..5.0)
        }
    };
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        present[u][v] = true;
        edges.push((u, v, weight(&mut rng)));
    }
    let density = rng.random_range(0.0..0.7);
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.random_bool(density) {
                present[u][v] = true;
                edges.push((u, v, weight(&mut rng)));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random tree on 2..=8 nodes with unit weights; shortest paths are unique.
pub fn random_tree(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472_6565);
    let n = rng.random_range(2..=8);
    let edges = (1..n).map(|v| (rng.random_range(0..v), v, 1.0)).collect();
    Graph::new(n, edges).unwrap()
}

/// Possibly disconnected graph on 1..=8 nodes, optionally with self-loops,
/// and a random partition of it.
pub fn graph_and_partition(seed: u64) -> (Graph, Partition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f_6475);
    let n = rng.random_range(1..=8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u..n {
            let p = if u == v { 0.15 } else { 0.45 };
            if rng.random_bool(p) {
                edges.push((u, v, rng.random_range(0.1..4.0)));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, n - 1, 1.0));
    }
    let k = rng.random_range(1..=n);
    let labels = (0..n).map(|_| rng.random_range(0..k) * 10 + 3).collect();
    (Graph::with_loops(n, edges).unwrap(), Partition::new(labels))
}

pub fn named_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("P3", Graph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap()),
        (
            "star3",
            Graph::new(4, vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap(),
        ),
        (
            "C5",
            Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5, 1.0)).collect()).unwrap(),
        ),
        ("K2w2", Graph::new(2, vec![(0, 1, 2.0)]).unwrap()),
        (
            "triangle123",
            Graph::new(3, vec![(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)]).unwrap(),
        ),
    ]
}

fn weight_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut w = vec![vec![0.0; n]; n];
    for &(u, v, x) in g.edges() {
        w[u][v] = x;
        w[v][u] = x;
    }
    w
}

/// Every simple path from `s` to `t`, as node sequences.
pub fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(
        w: &[Vec<f64>],
        t: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for v in 0..w.len() {
            if v != u && w[u][v] > 0.0 && !on_path[v] {
                on_path[v] = true;
                path.push(v);
                walk(w, t, path, on_path, out);
                path.pop();
                on_path[v] = false;
            }
        }
    }
    let w = weight_matrix(g);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    on_path[s] = true;
    walk(&w, t, &mut vec![s], &mut on_path, &mut out);
    out
}

fn path_length(w: &[Vec<f64>], path: &[usize]) -> f64 {
    path.windows(2).map(|e| 1.0 / w[e[0]][e[1]]).sum()
}

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
}

/// All-pairs shortest path lengths by exhaustive path enumeration.
pub fn brute_distances(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let w = weight_matrix(g);
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for s in 0..n {
        d[s][s] = 0.0;
        for t in 0..n {
            if s != t {
                for p in simple_paths(g, s, t) {
                    d[s][t] = d[s][t].min(path_length(&w, &p));
                }
            }
        }
    }
    d
}

pub fn brute_degree(g: &Graph) -> Vec<f64> {
    let mut s = vec![0.0; g.node_count()];
    for &(u, v, w) in g.edges() {
        s[u] += w;
        s[v] += w;
    }
    s
}

pub fn brute_closeness(g: &Graph) -> Vec<f64> {
    brute_distances(g)
        .iter()
        .map(|row| 1.0 / row.iter().sum::<f64>())
        .collect()
}

/// Fractional betweenness by enumerating every simple path of every pair.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let w = weight_matrix(g);
    let mut bet = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = simple_paths(g, s, t);
            let best = paths
                .iter()
                .map(|p| path_length(&w, p))
                .fold(f64::INFINITY, f64::min);
            let shortest: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| tied(path_length(&w, p), best))
                .collect();
            let sigma = shortest.len() as f64;
            for p in &shortest {
                for &v in &p[1..p.len() - 1] {
                    bet[v] += 1.0 / sigma;
                }
            }
        }
    }
    bet
}

pub fn brute_relative_closeness(clo: &[f64]) -> Vec<f64> {
    let max = clo.iter().copied().fold(f64::MIN, f64::max);
    clo.iter().map(|c| c / (2.0 * max + 1.0)).collect()
}

pub fn brute_combined(g: &Graph) -> Vec<f64> {
    let rel = brute_relative_closeness(&brute_closeness(g));
    brute_betweenness(g)
        .iter()
        .zip(&rel)
        .map(|(b, c)| b + c)
        .collect()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

/// PageRank as the exact solution of its linear fixed-point system.
pub fn linear_pagerank(g: &Graph, damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let nf = n as f64;
    let w = weight_matrix(g);
    let strength: Vec<f64> = w.iter().map(|r| r.iter().sum()).collect();
    // x_v - d * sum_u P[u][v] x_u - d/n * sum_{dangling u} x_u = (1 - d)/n
    let mut a = vec![vec![0.0; n]; n];
    for v in 0..n {
        a[v][v] += 1.0;
        for u in 0..n {
            if strength[u] > 0.0 {
                a[v][u] -= damping * w[u][v] / strength[u];
            } else {
                a[v][u] -= damping / nf;
            }
        }
    }
    solve(a, vec![(1.0 - damping) / nf; n])
}

/// `(1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)` with `A_ii = 2 * loop`.
pub fn double_sum_modularity(g: &Graph, p: &Partition) -> f64 {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in g.edges() {
        if u == v {
            a[u][u] += 2.0 * w;
        } else {
            a[u][v] += w;
            a[v][u] += w;
        }
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if p.label(i) == p.label(j) {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
