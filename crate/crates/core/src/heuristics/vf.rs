//! Vertex following: every vertex whose only incident edge is `(i, j)`, with
//! `j != i` and no self loop on `i`, ends up in `j`'s community under serial
//! Louvain, so it is folded into `j` before clustering starts.

use rayon::prelude::*;

use crate::graph::{Graph, GraphBuilder, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub struct VfMapping {
    map: Vec<VertexId>,
    graph: Graph,
    merged: usize,
}

impl VfMapping {
    /// Compacted id of every original vertex.
    pub fn map(&self) -> &[VertexId] {
        &self.map
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Number of original vertices folded into a neighbor.
    pub fn merged_count(&self) -> usize {
        self.merged
    }

    /// Lifts an assignment on the compacted graph back to the original vertices.
    pub fn expand<T: Copy>(&self, compacted: &[T]) -> Vec<T> {
        self.map.iter().map(|&c| compacted[c]).collect()
    }
}

/// Sole non-self neighbor of `v` when `v` has exactly one incident edge and it
/// is not a self loop.
fn single_neighbor(g: &Graph, v: VertexId) -> Option<VertexId> {
    match g.adjacency(v).0 {
        [u] if *u != v => Some(*u),
        _ => None,
    }
}

/// One pass of vertex following over the original degrees. When two
/// single-degree vertices form an isolated pair, the higher id folds into the
/// lower one. Surviving vertices are renumbered in ascending original id.
pub fn vf_compact(g: &Graph) -> VfMapping {
    let n = g.num_vertices();
    let target: Vec<Option<VertexId>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let j = single_neighbor(g, v)?;
            match single_neighbor(g, j) {
                Some(_) if v < j => None,
                _ => Some(j),
            }
        })
        .collect();

    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if target[v].is_none() {
            new_id[v] = next;
            next += 1;
        }
    }
    let map: Vec<VertexId> = (0..n)
        .map(|v| match target[v] {
            Some(j) => new_id[j],
            None => new_id[v],
        })
        .collect();
    let merged = n - next;

    let mut builder = GraphBuilder::with_capacity(next, g.num_edges());
    for (u, v, w) in g.edges() {
        let (a, b) = if target[u].is_some() || target[v].is_some() {
            // the merged endpoint's only edge becomes part of the survivor's loop
            (map[u], map[u])
        } else {
            (map[u], map[v])
        };
        builder.add_edge(a, b, w).expect("compacted ids are in range");
    }
    VfMapping {
        map,
        graph: builder.build().0,
        merged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_collapses_to_one_vertex() {
        let g = Graph::from_unit_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let vf = vf_compact(&g);
        assert_eq!(vf.map(), &[0, 0, 0, 0]);
        assert_eq!(vf.merged_count(), 3);
        let c = vf.graph();
        assert_eq!(c.num_vertices(), 1);
        assert_eq!(c.self_loop(0), 3.0);
        assert_eq!(c.weighted_degree(0), 6.0);
        assert_eq!(c.total_weight(), 3.0);
    }

    #[test]
    fn triangle_is_unchanged() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let vf = vf_compact(&g);
        assert_eq!(vf.map(), &[0, 1, 2]);
        assert_eq!(vf.graph(), &g);
        assert_eq!(vf.merged_count(), 0);
    }

    #[test]
    fn path_endpoints_fold_into_middle() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let vf = vf_compact(&g);
        assert_eq!(vf.map(), &[0, 0, 0]);
        assert_eq!(vf.graph().num_vertices(), 1);
        assert_eq!(vf.graph().self_loop(0), 2.0);
        assert_eq!(vf.graph().total_weight(), 2.0);
    }

    #[test]
    fn isolated_pair_keeps_lower_id() {
        let g = Graph::from_edges(4, &[(1, 3, 2.5), (0, 2, 1.0), (0, 0, 1.0)]).unwrap();
        let vf = vf_compact(&g);
        // vertex 0 has a self loop, so 2 folds into it; 3 folds into 1
        assert_eq!(vf.map(), &[0, 1, 0, 1]);
        assert_eq!(vf.graph().self_loop(0), 2.0);
        assert_eq!(vf.graph().self_loop(1), 2.5);
        assert_eq!(vf.graph().total_weight(), g.total_weight());
    }

    #[test]
    fn looped_leaf_is_not_merged() {
        // vertex 2 has one neighbor but also a self loop
        let g = Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let vf = vf_compact(&g);
        assert_eq!(vf.merged_count(), 0);
        let g = Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 2, 1.0)]).unwrap();
        let vf = vf_compact(&g);
        assert_eq!(vf.map(), &[0, 0, 1]);
        assert_eq!(vf.graph().self_loop(0), 1.0);
    }

    #[test]
    fn existing_self_loop_is_extended() {
        let g = Graph::from_edges(3, &[(0, 0, 0.5), (0, 1, 2.0), (0, 2, 3.0), (1, 2, 1.0), (2, 2, 1.0)])
            .unwrap();
        let g2 = Graph::from_edges(4, &[(0, 0, 0.5), (0, 1, 2.0), (0, 2, 3.0), (1, 2, 1.0), (0, 3, 4.0)])
            .unwrap();
        assert_eq!(vf_compact(&g).merged_count(), 0);
        let vf = vf_compact(&g2);
        assert_eq!(vf.map(), &[0, 1, 2, 0]);
        assert_eq!(vf.graph().self_loop(0), 4.5);
        assert_eq!(vf.expand(&[7, 8, 9]), vec![7, 8, 9, 7]);
    }
}
