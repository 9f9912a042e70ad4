//! One decision sweep over a vertex subset.
//!
//! Gains are evaluated in parallel against the state as it was when the sweep
//! started. The chosen moves are then applied together: every moved vertex
//! emits one aggregate delta for its source and one for its target
//! community, and the deltas are reduced per community in `(community,
//! vertex)` order. Sums therefore come out bit-identical for any number of
//! workers.

use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::modularity::{gather_neighbor_weights, move_gain, CommunityId, CommunityState};

/// Sweep state reused across the stages of a phase.
pub(crate) struct Sweeper {
    /// Community each vertex holds after the pending moves; equals the
    /// state's assignment outside of `apply`.
    next: Vec<CommunityId>,
}

#[derive(Clone, Copy)]
struct Delta {
    community: CommunityId,
    vertex: VertexId,
    degree: f64,
    internal: f64,
    size: isize,
}

impl Sweeper {
    pub(crate) fn new(s: &CommunityState) -> Self {
        Sweeper {
            next: s.assignment.clone(),
        }
    }

    /// Runs one sweep over `vertices` and returns the number of moves.
    pub(crate) fn sweep(&mut self, g: &Graph, s: &mut CommunityState, vertices: &[VertexId]) -> usize {
        let moves: Vec<(VertexId, CommunityId)> = vertices
            .par_iter()
            .with_min_len(256)
            .map_init(Vec::new, |buf, &v| decide(g, s, v, buf).map(|c| (v, c)))
            .flatten_iter()
            .collect();
        self.apply(g, s, &moves);
        moves.len()
    }

    fn apply(&mut self, g: &Graph, s: &mut CommunityState, moves: &[(VertexId, CommunityId)]) {
        if moves.is_empty() {
            return;
        }
        for &(v, c) in moves {
            self.next[v] = c;
        }
        let prev = &s.assignment;
        let next = &self.next;

        let mut deltas: Vec<Delta> = moves
            .par_iter()
            .with_min_len(256)
            .flat_map_iter(|&(v, to)| {
                let from = prev[v];
                let mut out_internal = 0.0;
                let mut in_internal = 0.0;
                for (u, w) in g.neighbors(v) {
                    if u == v {
                        out_internal -= 2.0 * w;
                        in_internal += 2.0 * w;
                        continue;
                    }
                    // an edge between two moved vertices is handled by the lower id
                    if u < v && prev[u] != next[u] {
                        continue;
                    }
                    if prev[u] == from {
                        out_internal -= 2.0 * w;
                    }
                    if next[u] == to {
                        in_internal += 2.0 * w;
                    }
                }
                let k = g.weighted_degree(v);
                [
                    Delta {
                        community: from,
                        vertex: v,
                        degree: -k,
                        internal: out_internal,
                        size: -1,
                    },
                    Delta {
                        community: to,
                        vertex: v,
                        degree: k,
                        internal: in_internal,
                        size: 1,
                    },
                ]
            })
            .collect();

        deltas.par_sort_unstable_by_key(|d| (d.community, d.vertex));
        let mut starts: Vec<usize> = Vec::with_capacity(deltas.len());
        for (i, d) in deltas.iter().enumerate() {
            if i == 0 || deltas[i - 1].community != d.community {
                starts.push(i);
            }
        }
        starts.push(deltas.len());
        let sums: Vec<Delta> = starts
            .par_windows(2)
            .map(|w| {
                let group = &deltas[w[0]..w[1]];
                group.iter().skip(1).fold(group[0], |acc, d| Delta {
                    degree: acc.degree + d.degree,
                    internal: acc.internal + d.internal,
                    size: acc.size + d.size,
                    ..acc
                })
            })
            .collect();

        for d in sums {
            let c = d.community;
            let size = s.sizes[c] as isize + d.size;
            debug_assert!(size >= 0);
            s.sizes[c] = size as usize;
            if size == 0 {
                s.a_tot[c] = 0.0;
                s.w_internal[c] = 0.0;
            } else {
                s.a_tot[c] += d.degree;
                s.w_internal[c] += d.internal;
            }
        }
        for &(v, c) in moves {
            s.assignment[v] = c;
        }
    }
}

/// Best move for `v` against the current state, or `None` to stay.
///
/// Candidates are `C(v)` and the communities of `v`'s neighbors. The highest
/// gain wins; equal gains go to the smallest label. A move between two
/// singleton communities only happens toward the smaller label.
fn decide(
    g: &Graph,
    s: &CommunityState,
    v: VertexId,
    buf: &mut Vec<(CommunityId, f64)>,
) -> Option<CommunityId> {
    gather_neighbor_weights(g, &s.assignment, v, buf);
    if buf.len() < 2 {
        return None;
    }
    let own = s.assignment[v];
    let k = g.weighted_degree(v);
    let m = g.total_weight();
    let e_own = buf
        .iter()
        .find(|&&(c, _)| c == own)
        .map_or(0.0, |&(_, e)| e);
    let a_own_rest = s.a_tot[own] - k;

    let mut max_gain = 0.0;
    let mut best = own;
    for &(c, e) in buf.iter() {
        let gain = if c == own {
            0.0
        } else {
            move_gain(e, e_own, k, a_own_rest, s.a_tot[c], m)
        };
        if gain > max_gain || (gain == max_gain && s.labels[c] < s.labels[best]) {
            max_gain = gain;
            best = c;
        }
    }
    if !(max_gain > 0.0) || best == own {
        return None;
    }
    if s.sizes[own] == 1 && s.sizes[best] == 1 && s.labels[best] > s.labels[own] {
        return None;
    }
    Some(best)
}

/// Runs one sweep over `vertices` (all of `V`, or one color class) and
/// returns how many vertices changed community.
pub fn run_iteration(g: &Graph, s: &mut CommunityState, vertices: &[VertexId]) -> usize {
    Sweeper::new(s).sweep(g, s, vertices)
}
