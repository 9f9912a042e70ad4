//! Reference implementations used by the integration tests. Everything here
//! works from plain edge lists and never touches the engine's bookkeeping.
#![allow(dead_code)]

use comdet_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Edge = (usize, usize, f64);

pub fn edge_list(g: &Graph) -> Vec<Edge> {
    g.edges().collect()
}

/// Modularity straight from the definition, summed over an edge list.
pub fn oracle_q(n: usize, edges: &[Edge], assignment: &[usize]) -> f64 {
    let mut k = vec![0.0; n];
    let mut two_m = 0.0;
    let mut internal = 0.0;
    for &(u, v, w) in edges {
        k[u] += w;
        k[v] += w;
        two_m += 2.0 * w;
        if assignment[u] == assignment[v] {
            internal += 2.0 * w;
        }
    }
    let communities = assignment.iter().max().map_or(0, |&c| c + 1);
    let mut a = vec![0.0; communities];
    for v in 0..n {
        a[assignment[v]] += k[v];
    }
    internal / two_m - a.iter().map(|x| (x / two_m) * (x / two_m)).sum::<f64>()
}

pub fn oracle_q_graph(g: &Graph, assignment: &[usize]) -> f64 {
    oracle_q(g.num_vertices(), &edge_list(g), assignment)
}

/// Every set partition of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(cur: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + usize::from(!cur.is_empty()) {
            let next_max = if cur.is_empty() { 0 } else { max.max(c) };
            cur.push(c);
            grow(cur, next_max, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        grow(&mut Vec::new(), 0, n, &mut out);
    }
    out
}

/// Best modularity over all partitions of a small graph.
pub fn max_modularity(g: &Graph) -> f64 {
    let edges = edge_list(g);
    set_partitions(g.num_vertices())
        .iter()
        .map(|p| oracle_q(g.num_vertices(), &edges, p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Random graph with weights in `(0, max_weight]`, a sprinkling of self loops
/// and, with `leaves`, extra degree-1 vertices hung off random hosts.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, avg_degree: f64, max_weight: f64, leaves: usize) -> Graph {
    let p = (avg_degree / n.max(2) as f64).min(1.0);
    let mut edges = Vec::new();
    let w = |rng: &mut ChaCha8Rng| max_weight * (1.0 - rng.gen::<f64>());
    for u in 0..n {
        if rng.gen::<f64>() < 0.05 {
            let x = w(rng);
            edges.push((u, u, x));
        }
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                let x = w(rng);
                edges.push((u, v, x));
            }
        }
    }
    for leaf in n..n + leaves {
        let host = rng.gen_range(0..n.max(1));
        let x = w(rng);
        edges.push((host, leaf, x));
    }
    Graph::from_edges(n + leaves, &edges).expect("generated edges are valid")
}

/// Same shape as [`random_graph`] with integer weights in `1..=max_weight`.
pub fn random_integer_graph(rng: &mut ChaCha8Rng, n: usize, avg_degree: f64, max_weight: u32, leaves: usize) -> Graph {
    let g = random_graph(rng, n, avg_degree, 1.0, leaves);
    let edges: Vec<Edge> = g
        .edges()
        .map(|(u, v, _)| (u, v, rng.gen_range(1..=max_weight) as f64))
        .collect();
    Graph::from_edges(g.num_vertices(), &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random assignment of `n` vertices into at most `k` communities, renumbered
/// densely in first-appearance order.
pub fn random_assignment(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k.max(1))).collect();
    densify(&raw)
}

pub fn densify<T: Eq + std::hash::Hash + Clone>(raw: &[T]) -> Vec<usize> {
    let mut ids = std::collections::HashMap::new();
    raw.iter()
        .map(|x| {
            let next = ids.len();
            *ids.entry(x.clone()).or_insert(next)
        })
        .collect()
}

pub fn no_edge_inside_color_class(g: &Graph, colors: &[u32]) -> bool {
    g.edges().all(|(u, v, _)| u == v || colors[u] != colors[v])
}

pub fn two_triangles() -> Graph {
    Graph::from_unit_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]).unwrap()
}

pub fn k4() -> Graph {
    Graph::from_unit_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
