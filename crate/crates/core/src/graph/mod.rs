//! Immutable weighted undirected graphs in compressed adjacency form.
//!
//! Every vertex owns a contiguous range of the shared `neighbors`/`weights`
//! arrays. A non-self edge `{u, v}` is stored once in each endpoint's range, a
//! self loop is stored once in its vertex's range. Ranges are sorted by
//! neighbor id.
//!
//! Self loops count twice toward the weighted degree: a loop of weight `w`
//! adds `2w` to `k_i`. This keeps modularity invariant when communities are
//! collapsed into meta-vertices.

mod generate;
mod io;
mod stats;

pub use generate::{random_geometric, random_weighted, GeometricParams};
pub use io::{
    load_graph, read_assignment, read_graph, write_assignment, write_edge_list, Format, LoadedGraph,
};
pub use stats::{degree_stats, DegreeStats};

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    weights: Vec<f64>,
    weighted_degrees: Vec<f64>,
    num_edges: usize,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph from an edge list, merging duplicate records by summing
    /// their weights.
    pub fn from_edges(num_vertices: usize, edges: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        let mut builder = GraphBuilder::new(num_vertices);
        for &(u, v, w) in edges {
            builder.add_edge(u, v, w)?;
        }
        Ok(builder.build().0)
    }

    /// Same as [`Graph::from_edges`] with every weight set to 1.
    pub fn from_unit_edges(num_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut builder = GraphBuilder::new(num_vertices);
        for &(u, v) in edges {
            builder.add_edge(u, v, 1.0)?;
        }
        Ok(builder.build().0)
    }

    /// Builds the adjacency arrays from canonical edges: `u <= v`, sorted by
    /// `(u, v)`, no duplicates, positive weights.
    pub(crate) fn from_canonical(num_vertices: usize, edges: &[(VertexId, VertexId, f64)]) -> Self {
        let mut counts = vec![0usize; num_vertices + 1];
        for &(u, v, _) in edges {
            counts[u + 1] += 1;
            if u != v {
                counts[v + 1] += 1;
            }
        }
        for i in 0..num_vertices {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let total = offsets[num_vertices];
        let mut cursor = offsets[..num_vertices].to_vec();
        let mut neighbors = vec![0; total];
        let mut weights = vec![0.0; total];
        // Sorted canonical input leaves every range sorted: entries (u, x) with
        // u < x arrive before the entries (x, v) with v >= x.
        for &(u, v, w) in edges {
            neighbors[cursor[u]] = v;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            if u != v {
                neighbors[cursor[v]] = u;
                weights[cursor[v]] = w;
                cursor[v] += 1;
            }
        }

        let weighted_degrees: Vec<f64> = (0..num_vertices)
            .map(|i| {
                let (lo, hi) = (offsets[i], offsets[i + 1]);
                neighbors[lo..hi]
                    .iter()
                    .zip(&weights[lo..hi])
                    .map(|(&j, &w)| if j == i { 2.0 * w } else { w })
                    .sum()
            })
            .collect();
        let total_weight = 0.5 * weighted_degrees.iter().sum::<f64>();

        Graph {
            offsets,
            neighbors,
            weights,
            weighted_degrees,
            num_edges: edges.len(),
            total_weight,
        }
    }

    /// Number of vertices `n`.
    pub fn num_vertices(&self) -> usize {
        self.weighted_degrees.len()
    }

    /// Number of distinct undirected edges `M`, self loops included.
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Sum of all edge weights `m`, equal to half the sum of weighted degrees.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn weighted_degree(&self, v: VertexId) -> f64 {
        self.weighted_degrees[v]
    }

    pub fn weighted_degrees(&self) -> &[f64] {
        &self.weighted_degrees
    }

    /// Unweighted degree; a self loop counts once.
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbor ids and weights of `v`, sorted by neighbor id.
    pub fn adjacency(&self, v: VertexId) -> (&[VertexId], &[f64]) {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        (&self.neighbors[lo..hi], &self.weights[lo..hi])
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let (ids, ws) = self.adjacency(v);
        ids.iter().copied().zip(ws.iter().copied())
    }

    /// Weight of the self loop on `v`, or 0 when there is none.
    pub fn self_loop(&self, v: VertexId) -> f64 {
        let (ids, ws) = self.adjacency(v);
        ids.binary_search(&v).map_or(0.0, |pos| ws[pos])
    }

    /// Weight of edge `{u, v}`, or 0 when absent.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> f64 {
        let (ids, ws) = self.adjacency(u);
        ids.binary_search(&v).map_or(0.0, |pos| ws[pos])
    }

    /// Each undirected edge once, as `(u, v, w)` with `u <= v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.num_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v >= u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[VertexId]) -> Result<Self> {
        let n = self.num_vertices();
        if perm.len() != n {
            return Err(Error::Precondition(format!(
                "permutation has {} entries, graph has {n} vertices",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition("not a permutation".into()));
            }
        }
        let mut edges: Vec<_> = self
            .edges()
            .map(|(u, v, w)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b), w)
            })
            .collect();
        edges.sort_by_key(|e| (e.0, e.1));
        Ok(Graph::from_canonical(n, &edges))
    }

    /// Checks every structural invariant. Intended for tests and debug checks.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices();
        let fail = |msg: String| Err(Error::Precondition(msg));
        let mut self_loops = 0usize;
        let mut entries = 0usize;
        for u in 0..n {
            let (ids, ws) = self.adjacency(u);
            entries += ids.len();
            if ids.windows(2).any(|p| p[0] >= p[1]) {
                return fail(format!("adjacency of {u} not strictly sorted"));
            }
            for (&v, &w) in ids.iter().zip(ws) {
                if v >= n {
                    return fail(format!("neighbor {v} of {u} out of range"));
                }
                if !(w > 0.0 && w.is_finite()) {
                    return fail(format!("weight {w} on edge ({u},{v})"));
                }
                if v == u {
                    self_loops += 1;
                } else if self.edge_weight(v, u) != w {
                    return fail(format!("edge ({u},{v}) not mirrored with equal weight"));
                }
            }
        }
        if (entries - self_loops) % 2 != 0 || (entries - self_loops) / 2 + self_loops != self.num_edges
        {
            return fail("edge count mismatch".into());
        }
        let sum: f64 = self.weighted_degrees.iter().sum();
        if 0.5 * sum != self.total_weight {
            return fail("total weight is not half the degree sum".into());
        }
        Ok(())
    }
}

/// Accumulates edge records and produces a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    num_vertices: usize,
    edges: Vec<(VertexId, VertexId, f64)>,
}

impl GraphBuilder {
    pub fn new(num_vertices: usize) -> Self {
        GraphBuilder {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn with_capacity(num_vertices: usize, edges: usize) -> Self {
        GraphBuilder {
            num_vertices,
            edges: Vec::with_capacity(edges),
        }
    }

    /// Grows the vertex set so that ids below `num_vertices` are valid.
    pub fn ensure_vertices(&mut self, num_vertices: usize) {
        self.num_vertices = self.num_vertices.max(num_vertices);
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: f64) -> Result<()> {
        for x in [u, v] {
            if x >= self.num_vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    num_vertices: self.num_vertices,
                });
            }
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::Precondition(format!(
                "edge ({u},{v}) has non-positive weight {weight}"
            )));
        }
        self.edges.push((u.min(v), u.max(v), weight));
        Ok(())
    }

    /// Returns the graph and the number of duplicate records that were merged.
    pub fn build(mut self) -> (Graph, usize) {
        // Stable sort keeps the summation order of duplicates equal to input order.
        self.edges.sort_by_key(|e| (e.0, e.1));
        let mut merged = 0usize;
        let mut canonical: Vec<(VertexId, VertexId, f64)> = Vec::with_capacity(self.edges.len());
        for (u, v, w) in self.edges {
            match canonical.last_mut() {
                Some(last) if last.0 == u && last.1 == v => {
                    last.2 += w;
                    merged += 1;
                }
                _ => canonical.push((u, v, w)),
            }
        }
        (Graph::from_canonical(self.num_vertices, &canonical), merged)
    }
}
