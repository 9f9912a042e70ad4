//! Small seeded synthetic generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphBuilder};

/// Erdős–Rényi style graph: each unordered pair `{u, v}`, `u != v`, is an edge
/// with probability `edge_prob`, each vertex gets a self loop with probability
/// `loop_prob`. Weights are uniform in `(0, max_weight]`.
pub fn random_weighted(
    num_vertices: usize,
    edge_prob: f64,
    loop_prob: f64,
    max_weight: f64,
    seed: u64,
) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = GraphBuilder::new(num_vertices);
    let weight = |rng: &mut ChaCha8Rng| max_weight * (1.0 - rng.gen::<f64>());
    for u in 0..num_vertices {
        if rng.gen::<f64>() < loop_prob {
            let w = weight(&mut rng);
            builder.add_edge(u, u, w).expect("valid edge");
        }
        for v in (u + 1)..num_vertices {
            if rng.gen::<f64>() < edge_prob {
                let w = weight(&mut rng);
                builder.add_edge(u, v, w).expect("valid edge");
            }
        }
    }
    builder.build().0
}

#[derive(Clone, Copy, Debug)]
pub struct GeometricParams {
    pub num_vertices: usize,
    /// Expected unweighted degree away from the boundary.
    pub avg_degree: f64,
    pub seed: u64,
}

/// Random geometric graph on the unit square with unit weights. Vertex ids are
/// in generation order, so neighbors have unrelated ids.
pub fn random_geometric(params: GeometricParams) -> Graph {
    let n = params.num_vertices;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let radius = (params.avg_degree / (n.max(1) as f64 * std::f64::consts::PI)).sqrt();
    let cells = ((1.0 / radius).floor() as usize).clamp(1, 1 << 12);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in points.iter().enumerate() {
        buckets[cell_of(y) * cells + cell_of(x)].push(i);
    }

    let r2 = radius * radius;
    let mut builder = GraphBuilder::with_capacity(n, (n as f64 * params.avg_degree / 2.0) as usize);
    for (u, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        for gy in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
            for gx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
                for &v in &buckets[gy * cells + gx] {
                    if v <= u {
                        continue;
                    }
                    let (px, py) = points[v];
                    if (px - x).powi(2) + (py - y).powi(2) <= r2 {
                        builder.add_edge(u, v, 1.0).expect("valid edge");
                    }
                }
            }
        }
    }
    builder.build().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_generator_is_seeded_and_valid() {
        let a = random_weighted(40, 0.2, 0.1, 10.0, 3);
        let b = random_weighted(40, 0.2, 0.1, 10.0, 3);
        assert_eq!(a, b);
        a.validate().unwrap();
        for (_, _, w) in a.edges() {
            assert!(w > 0.0 && w <= 10.0);
        }
    }

    #[test]
    fn geometric_degree_is_near_target() {
        let g = random_geometric(GeometricParams {
            num_vertices: 5000,
            avg_degree: 12.0,
            seed: 1,
        });
        g.validate().unwrap();
        let avg = 2.0 * g.num_edges() as f64 / 5000.0;
        // boundary effects pull the mean a little below the target
        assert!(avg > 10.0 && avg < 12.5, "avg degree {avg}");
    }
}
