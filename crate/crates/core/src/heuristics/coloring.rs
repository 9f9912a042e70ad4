//! Distance-1 greedy coloring by speculative parallel rounds.
//!
//! Each round, every uncolored vertex picks the smallest color missing from
//! its neighbors colored in earlier rounds. Two adjacent vertices that picked
//! the same color in the same round conflict and the higher id is reset.
//! Decisions read only the state at the start of the round, so the outcome
//! does not depend on the number of workers.

use rayon::prelude::*;

use crate::graph::{Graph, VertexId};

const UNCOLORED: u32 = u32::MAX;

/// Rounds that settle fewer than this fraction of their vertices hand the rest
/// to a sequential greedy pass. Id-sorted chains would otherwise settle only
/// a few vertices per round.
const MIN_ROUND_PROGRESS: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: usize,
}

impl Coloring {
    pub fn color(&self, v: VertexId) -> usize {
        self.colors[v] as usize
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Number of vertices of each color.
    pub fn histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.num_colors];
        for &c in &self.colors {
            hist[c as usize] += 1;
        }
        hist
    }

    /// Vertices of each color class, ascending within a class.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut classes: Vec<Vec<VertexId>> = self
            .histogram()
            .into_iter()
            .map(Vec::with_capacity)
            .collect();
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c as usize].push(v);
        }
        classes
    }

    /// Relative standard deviation of the color class sizes.
    pub fn class_size_rsd(&self) -> f64 {
        let hist = self.histogram();
        if hist.is_empty() {
            return 0.0;
        }
        let k = hist.len() as f64;
        let mean = hist.iter().sum::<usize>() as f64 / k;
        let var = hist.iter().map(|&h| (h as f64 - mean).powi(2)).sum::<f64>() / k;
        var.sqrt() / mean
    }

    /// Number of non-self edges whose endpoints share a color.
    pub fn conflicts(&self, g: &Graph) -> usize {
        g.edges()
            .filter(|&(u, v, _)| u != v && self.colors[u] == self.colors[v])
            .count()
    }
}

fn smallest_free_color(g: &Graph, colors: &[u32], v: VertexId, used: &mut Vec<bool>) -> u32 {
    let (ids, _) = g.adjacency(v);
    // a vertex of degree d always finds a free color in 0..=d
    used.clear();
    used.resize(ids.len() + 1, false);
    for &u in ids {
        let c = colors[u];
        if u != v && (c as usize) < used.len() {
            used[c as usize] = true;
        }
    }
    used.iter().position(|&x| !x).unwrap_or(ids.len()) as u32
}

pub fn color_graph(g: &Graph) -> Coloring {
    let n = g.num_vertices();
    let mut colors = vec![UNCOLORED; n];
    let mut in_round = vec![false; n];
    let mut pending: Vec<VertexId> = (0..n).collect();

    while !pending.is_empty() {
        let tentative: Vec<u32> = pending
            .par_iter()
            .map_init(Vec::new, |used, &v| smallest_free_color(g, &colors, v, used))
            .collect();
        for (&v, &c) in pending.iter().zip(&tentative) {
            colors[v] = c;
            in_round[v] = true;
        }
        let losers: Vec<VertexId> = pending
            .par_iter()
            .copied()
            .filter(|&v| {
                g.adjacency(v)
                    .0
                    .iter()
                    .any(|&u| u < v && in_round[u] && colors[u] == colors[v])
            })
            .collect();
        for &v in &pending {
            in_round[v] = false;
        }
        for &v in &losers {
            colors[v] = UNCOLORED;
        }
        let settled = pending.len() - losers.len();
        let slow = (settled as f64) < MIN_ROUND_PROGRESS * pending.len() as f64;
        pending = losers;
        if slow {
            let mut used = Vec::new();
            for &v in &pending {
                colors[v] = smallest_free_color(g, &colors, v, &mut used);
            }
            pending.clear();
        }
    }

    let num_colors = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    Coloring { colors, num_colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_weighted;

    #[test]
    fn triangle_needs_three_colors() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = color_graph(&g);
        assert_eq!(c.num_colors(), 3);
        assert_eq!(c.conflicts(&g), 0);
    }

    #[test]
    fn path_alternates() {
        let g = Graph::from_unit_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = color_graph(&g);
        assert_eq!(c.colors(), &[0, 1, 0]);
        assert_eq!(c.num_colors(), 2);
        assert_eq!(c.classes(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn self_loops_impose_nothing() {
        let g = Graph::from_edges(3, &[(0, 0, 1.0), (2, 2, 1.0)]).unwrap();
        let c = color_graph(&g);
        assert_eq!(c.num_colors(), 1);
        assert_eq!(c.histogram(), vec![3]);
    }

    #[test]
    fn long_id_sorted_path_is_valid() {
        let edges: Vec<_> = (0..999).map(|i| (i, i + 1)).collect();
        let g = Graph::from_unit_edges(1000, &edges).unwrap();
        let c = color_graph(&g);
        assert_eq!(c.conflicts(&g), 0);
        assert_eq!(c.num_colors(), 2);
    }

    #[test]
    fn every_color_is_used_and_valid() {
        for seed in 0..10 {
            let g = random_weighted(80, 0.1, 0.05, 1.0, seed);
            let c = color_graph(&g);
            assert_eq!(c.conflicts(&g), 0);
            assert!(c.histogram().iter().all(|&h| h > 0));
        }
    }
}
