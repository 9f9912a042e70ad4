//! Fixed synthetic inputs shared by the benchmarks.

use comdet_core::graph::{random_geometric, GeometricParams};
use comdet_core::Graph;

/// Random geometric graph with roughly `num_vertices * avg_degree / 2` edges.
pub fn geometric(num_vertices: usize, avg_degree: f64) -> Graph {
    random_geometric(GeometricParams {
        num_vertices,
        avg_degree,
        seed: 42,
    })
}

/// Sizes used across the benchmark groups: about 10k, 100k and 400k edges.
pub const SIZES: [(usize, f64); 3] = [(2_000, 10.0), (12_500, 16.0), (40_000, 20.0)];
