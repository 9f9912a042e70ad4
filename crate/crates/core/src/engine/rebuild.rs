use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::modularity::{CommunityId, CommunityState};

/// Coarsened graph and the maps linking it to the phase graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Rebuilt {
    pub graph: Graph,
    /// Meta-vertex of each community, `None` for empty communities.
    pub community_map: Vec<Option<VertexId>>,
    /// Meta-vertex of each vertex of the phase graph.
    pub vertex_map: Vec<VertexId>,
}

/// Collapses every non-empty community of `s` into one meta-vertex.
///
/// Meta-vertices are numbered by ascending community label. A meta-vertex
/// carries a self loop holding the community's intra-community weight counted
/// once; two meta-vertices are joined by the summed weight of the edges
/// between their communities. Singleton modularity on the result equals the
/// modularity of `s` on `g`.
pub fn rebuild(g: &Graph, s: &CommunityState) -> Rebuilt {
    let n = g.num_vertices();
    let assignment = s.assignment();

    let mut nonempty: Vec<CommunityId> = (0..s.sizes.len()).filter(|&c| s.sizes[c] > 0).collect();
    nonempty.sort_by_key(|&c| s.labels[c]);
    let mut community_map = vec![None; s.sizes.len()];
    for (new, &c) in nonempty.iter().enumerate() {
        community_map[c] = Some(new);
    }
    let k = nonempty.len();
    let vertex_map: Vec<VertexId> = assignment
        .iter()
        .map(|&c| community_map[c].expect("assigned community is non-empty"))
        .collect();

    // members of each meta-vertex, ascending
    let mut starts = vec![0usize; k + 1];
    for &x in &vertex_map {
        starts[x + 1] += 1;
    }
    for i in 0..k {
        starts[i + 1] += starts[i];
    }
    let mut cursor = starts.clone();
    let mut members = vec![0; n];
    for (v, &x) in vertex_map.iter().enumerate() {
        members[cursor[x]] = v;
        cursor[x] += 1;
    }

    // Each meta-vertex accumulates its own loop and the edges toward higher
    // meta-vertices, so every weight is summed exactly once in a fixed order.
    let rows: Vec<Vec<(VertexId, VertexId, f64)>> = (0..k)
        .into_par_iter()
        .with_min_len(64)
        .map_init(Vec::new, |scratch: &mut Vec<(VertexId, f64)>, a| {
            scratch.clear();
            let mut internal = 0.0;
            for &v in &members[starts[a]..starts[a + 1]] {
                for (u, w) in g.neighbors(v) {
                    let b = vertex_map[u];
                    if u == v || (b == a && u > v) {
                        internal += w;
                    } else if b > a {
                        scratch.push((b, w));
                    }
                }
            }
            scratch.sort_by_key(|&(b, _)| b);
            let mut row = Vec::with_capacity(scratch.len() + 1);
            if internal > 0.0 {
                row.push((a, a, internal));
            }
            for &(b, w) in scratch.iter() {
                match row.last_mut() {
                    Some(last) if last.1 == b => last.2 += w,
                    _ => row.push((a, b, w)),
                }
            }
            row
        })
        .collect();
    let edges: Vec<(VertexId, VertexId, f64)> = rows.into_iter().flatten().collect();

    Rebuilt {
        graph: Graph::from_canonical(k, &edges),
        community_map,
        vertex_map,
    }
}
