use super::Graph;
use crate::error::{Error, Result};

/// Unweighted degree statistics: maximum, mean and relative standard deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub avg_degree: f64,
    /// Population standard deviation of the degrees divided by their mean.
    pub rsd: f64,
}

/// Degree statistics over all vertices, isolated ones included. A self loop
/// counts once toward a vertex's unweighted degree.
pub fn degree_stats(g: &Graph) -> Result<DegreeStats> {
    let n = g.num_vertices();
    if n == 0 || g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let degrees: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mean = degrees.iter().sum::<f64>() / n as f64;
    let var = degrees.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n as f64;
    Ok(DegreeStats {
        max_degree,
        avg_degree: mean,
        rsd: var.sqrt() / mean,
    })
}
