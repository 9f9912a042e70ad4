//! Parallel Louvain community detection.
//!
//! The crate covers the whole pipeline: loading weighted undirected graphs,
//! optional vertex-following compaction and distance-1 coloring, phases of
//! parallel modularity-maximizing sweeps with minimum-label tie breaking,
//! graph rebuilding between phases, and pair-counting comparison of the
//! resulting partitions.
//!
//! ```
//! use comdet_core::{run, Graph, NoTrace, RunConfig};
//!
//! let g = Graph::from_unit_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])?;
//! let h = run(&g, &RunConfig::default(), &mut NoTrace)?;
//! assert_eq!(h.assignment, vec![0, 0, 0, 1, 1, 1]);
//! assert!((h.modularity - 5.0 / 14.0).abs() < 1e-12);
//! # Ok::<(), comdet_core::Error>(())
//! ```

pub mod engine;
pub mod error;
pub mod eval;
pub mod graph;
pub mod heuristics;
pub mod modularity;

pub use engine::{
    rebuild, run, run_iteration, run_phase, CsvTrace, Hierarchy, NoTrace, PhaseOutcome, Rebuilt,
    RunConfig, Stage, StageTimings, TraceRecord, TraceSink,
};
pub use error::{Error, Result};
pub use eval::{compare_partitions, compare_partitions_bruteforce, PartitionComparison};
pub use graph::{degree_stats, load_graph, DegreeStats, Format, Graph, GraphBuilder, LoadedGraph, VertexId};
pub use heuristics::{color_graph, vf_compact, Coloring, VfMapping};
pub use modularity::{
    delta_q, joint_gain_oracle, modularity, modularity_of_assignment, neighbor_weights, CommunityId,
    CommunityState, NeighborWeights,
};
