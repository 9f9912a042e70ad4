//! Modularity, single-move gains and the per-community aggregates behind them.
//!
//! For a partition with community degrees `a_C` and intra-community weights
//! `w_C` (self loops and both directions of every internal edge counted),
//!
//! ```text
//! Q = sum_C w_C / 2m  -  sum_C (a_C / 2m)^2
//! ```
//!
//! Gains use the exclude-self convention: vertex `i` is removed from its own
//! community before `e_{i->C}` and `a_C` are read, so staying put scores 0.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Community ids share the vertex id space of the graph they partition.
pub type CommunityId = usize;

/// Community assignment plus the accumulators used by gain computations.
#[derive(Clone, Debug, PartialEq)]
pub struct CommunityState {
    pub(crate) assignment: Vec<CommunityId>,
    pub(crate) labels: Vec<usize>,
    pub(crate) a_tot: Vec<f64>,
    pub(crate) w_internal: Vec<f64>,
    pub(crate) sizes: Vec<usize>,
}

impl CommunityState {
    /// Every vertex alone in the community with its own id and label.
    pub fn singleton(g: &Graph) -> Self {
        let n = g.num_vertices();
        CommunityState {
            assignment: (0..n).collect(),
            labels: (0..n).collect(),
            a_tot: g.weighted_degrees().to_vec(),
            w_internal: (0..n).map(|v| 2.0 * g.self_loop(v)).collect(),
            sizes: vec![1; n],
        }
    }

    /// Builds a state with aggregates computed from scratch. Community ids must
    /// be below `n`.
    pub fn from_assignment(g: &Graph, assignment: &[CommunityId]) -> Result<Self> {
        let n = g.num_vertices();
        if assignment.len() != n {
            return Err(Error::Precondition(format!(
                "assignment covers {} vertices, graph has {n}",
                assignment.len()
            )));
        }
        if let Some(&c) = assignment.iter().find(|&&c| c >= n) {
            return Err(Error::Precondition(format!(
                "community id {c} outside 0..{n}"
            )));
        }
        let (a_tot, w_internal, sizes) = aggregates(g, assignment);
        Ok(CommunityState {
            assignment: assignment.to_vec(),
            labels: (0..n).collect(),
            a_tot,
            w_internal,
            sizes,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[CommunityId] {
        &self.assignment
    }

    pub fn community_of(&self, v: VertexId) -> CommunityId {
        self.assignment[v]
    }

    pub fn label(&self, c: CommunityId) -> usize {
        self.labels[c]
    }

    /// Community degree `a_C`.
    pub fn total_degree(&self, c: CommunityId) -> f64 {
        self.a_tot[c]
    }

    /// Intra-community weight of `c`, each internal edge counted from both
    /// endpoints and each self loop twice.
    pub fn internal_weight(&self, c: CommunityId) -> f64 {
        self.w_internal[c]
    }

    pub fn size(&self, c: CommunityId) -> usize {
        self.sizes[c]
    }

    pub fn num_communities(&self) -> usize {
        self.sizes.iter().filter(|&&s| s > 0).count()
    }

    /// Moves `v` into `target`, updating the aggregates incrementally.
    pub fn apply_move(&mut self, g: &Graph, v: VertexId, target: CommunityId) {
        let from = self.assignment[v];
        if from == target {
            return;
        }
        let mut e_from = 0.0;
        let mut e_to = 0.0;
        let mut self_loop = 0.0;
        for (u, w) in g.neighbors(v) {
            if u == v {
                self_loop = w;
            } else if self.assignment[u] == from {
                e_from += w;
            } else if self.assignment[u] == target {
                e_to += w;
            }
        }
        let k = g.weighted_degree(v);
        self.a_tot[from] -= k;
        self.a_tot[target] += k;
        self.w_internal[from] -= 2.0 * (e_from + self_loop);
        self.w_internal[target] += 2.0 * (e_to + self_loop);
        self.sizes[from] -= 1;
        self.sizes[target] += 1;
        self.assignment[v] = target;
        if self.sizes[from] == 0 {
            self.a_tot[from] = 0.0;
            self.w_internal[from] = 0.0;
        }
    }

    /// Largest relative deviation of the tracked aggregates from a full
    /// recomputation, scaled by `2m`.
    pub fn aggregate_drift(&self, g: &Graph) -> f64 {
        let (a_tot, w_internal, sizes) = aggregates(g, &self.assignment);
        if sizes != self.sizes {
            return f64::INFINITY;
        }
        let scale = (2.0 * g.total_weight()).max(f64::MIN_POSITIVE);
        a_tot
            .iter()
            .zip(&self.a_tot)
            .chain(w_internal.iter().zip(&self.w_internal))
            .map(|(x, y)| (x - y).abs() / scale)
            .fold(0.0, f64::max)
    }
}

fn aggregates(g: &Graph, assignment: &[CommunityId]) -> (Vec<f64>, Vec<f64>, Vec<usize>) {
    let n = g.num_vertices();
    let mut a_tot = vec![0.0; n];
    let mut w_internal = vec![0.0; n];
    let mut sizes = vec![0usize; n];
    for v in 0..n {
        let c = assignment[v];
        a_tot[c] += g.weighted_degree(v);
        sizes[c] += 1;
        for (u, w) in g.neighbors(v) {
            if u == v {
                w_internal[c] += 2.0 * w;
            } else if assignment[u] == c {
                w_internal[c] += w;
            }
        }
    }
    (a_tot, w_internal, sizes)
}

/// Modularity of `s` from its tracked aggregates.
pub fn modularity(g: &Graph, s: &CommunityState) -> Result<f64> {
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    Ok(modularity_from_aggregates(m, &s.a_tot, &s.w_internal))
}

pub(crate) fn modularity_from_aggregates(m: f64, a_tot: &[f64], w_internal: &[f64]) -> f64 {
    let two_m = 2.0 * m;
    let mut internal = 0.0;
    let mut squares = 0.0;
    for (&a, &w) in a_tot.iter().zip(w_internal) {
        internal += w;
        squares += (a / two_m) * (a / two_m);
    }
    internal / two_m - squares
}

/// Modularity recomputed from nothing but the assignment, by a full edge scan.
pub fn modularity_of_assignment(g: &Graph, assignment: &[CommunityId]) -> Result<f64> {
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    if assignment.len() != g.num_vertices() {
        return Err(Error::Precondition("assignment length differs from n".into()));
    }
    let two_m = 2.0 * m;
    let mut internal = 0.0;
    let mut a: std::collections::HashMap<CommunityId, f64> = Default::default();
    for v in 0..g.num_vertices() {
        *a.entry(assignment[v]).or_default() += g.weighted_degree(v);
        for (u, w) in g.neighbors(v) {
            if u == v {
                internal += 2.0 * w;
            } else if assignment[u] == assignment[v] {
                internal += w;
            }
        }
    }
    let mut degrees: Vec<(CommunityId, f64)> = a.into_iter().collect();
    degrees.sort_by_key(|&(c, _)| c);
    let squares: f64 = degrees.iter().map(|&(_, x)| (x / two_m) * (x / two_m)).sum();
    Ok(internal / two_m - squares)
}

/// Edge weight from a vertex into each neighboring community, `e_{i->C}`.
/// Always contains the vertex's own community, with the vertex itself (and
/// its self loop) excluded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NeighborWeights {
    entries: Vec<(CommunityId, f64)>,
    own: CommunityId,
}

impl NeighborWeights {
    pub fn communities(&self) -> impl Iterator<Item = (CommunityId, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn weight_to(&self, c: CommunityId) -> Option<f64> {
        self.entries
            .binary_search_by_key(&c, |&(x, _)| x)
            .ok()
            .map(|pos| self.entries[pos].1)
    }

    /// `e_{i->C(i)\{i}}`.
    pub fn own_weight(&self) -> f64 {
        self.weight_to(self.own).unwrap_or(0.0)
    }
}

/// Collects `(C(j), w)` for every non-self neighbor `j` of `v` into `buf`,
/// merged per community and sorted by community id, with `(C(v), 0)` inserted
/// when no neighbor shares `v`'s community. Summation follows adjacency order.
pub(crate) fn gather_neighbor_weights(
    g: &Graph,
    assignment: &[CommunityId],
    v: VertexId,
    buf: &mut Vec<(CommunityId, f64)>,
) {
    buf.clear();
    buf.push((assignment[v], 0.0));
    for (u, w) in g.neighbors(v) {
        if u != v {
            buf.push((assignment[u], w));
        }
    }
    // stable: equal communities keep adjacency order, own community's zero first
    buf.sort_by_key(|&(c, _)| c);
    let mut out = 0;
    for idx in 0..buf.len() {
        if out > 0 && buf[out - 1].0 == buf[idx].0 {
            buf[out - 1].1 += buf[idx].1;
        } else {
            buf[out] = buf[idx];
            out += 1;
        }
    }
    buf.truncate(out);
}

pub fn neighbor_weights(g: &Graph, s: &CommunityState, v: VertexId) -> NeighborWeights {
    let mut entries = Vec::new();
    gather_neighbor_weights(g, &s.assignment, v, &mut entries);
    NeighborWeights {
        entries,
        own: s.assignment[v],
    }
}

/// Gain of moving a vertex of weighted degree `k` out of its community into a
/// different one. `e_*` are edge weights from the vertex, `a_own_rest` is the
/// own community's degree without the vertex.
#[inline]
pub(crate) fn move_gain(e_target: f64, e_own: f64, k: f64, a_own_rest: f64, a_target: f64, m: f64) -> f64 {
    (e_target - e_own) / m + (2.0 * k * a_own_rest - 2.0 * k * a_target) / ((2.0 * m) * (2.0 * m))
}

/// Modularity gain of moving `v` into `target`. Staying in `C(v)` scores
/// exactly 0.
pub fn delta_q(
    g: &Graph,
    s: &CommunityState,
    v: VertexId,
    target: CommunityId,
    weights: &NeighborWeights,
) -> Result<f64> {
    let own = s.assignment[v];
    if target == own {
        return Ok(0.0);
    }
    let e_target = weights.weight_to(target).ok_or(Error::NotAdjacent {
        vertex: v,
        community: target,
    })?;
    let k = g.weighted_degree(v);
    Ok(move_gain(
        e_target,
        weights.own_weight(),
        k,
        s.a_tot[own] - k,
        s.a_tot[target],
        g.total_weight(),
    ))
}

/// Actual modularity change when two singleton vertices `i` and `j` join
/// community `target` at the same time:
/// `dQ_i + dQ_j + w(i,j)/m - 2 k_i k_j / (2m)^2`.
pub fn joint_gain_oracle(
    g: &Graph,
    s: &CommunityState,
    i: VertexId,
    j: VertexId,
    target: CommunityId,
) -> Result<f64> {
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    if i == j {
        return Err(Error::Precondition("joint move needs two distinct vertices".into()));
    }
    for v in [i, j] {
        let c = s.assignment[v];
        if s.sizes[c] != 1 {
            return Err(Error::Precondition(format!("vertex {v} is not a singleton")));
        }
        if c == target {
            return Err(Error::Precondition(format!("vertex {v} already in target")));
        }
    }
    let e_into = |v: VertexId| -> f64 {
        g.neighbors(v)
            .filter(|&(u, _)| u != v && s.assignment[u] == target)
            .map(|(_, w)| w)
            .sum()
    };
    let (ki, kj) = (g.weighted_degree(i), g.weighted_degree(j));
    let a = s.a_tot[target];
    let gain_i = move_gain(e_into(i), 0.0, ki, 0.0, a, m);
    let gain_j = move_gain(e_into(j), 0.0, kj, 0.0, a, m);
    Ok(gain_i + gain_j + g.edge_weight(i, j) / m - 2.0 * ki * kj / ((2.0 * m) * (2.0 * m)))
}
