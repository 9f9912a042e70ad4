//! Preprocessing heuristics applied before or between phases.

mod coloring;
mod vf;

pub use coloring::{color_graph, Coloring};
pub use vf::{vf_compact, VfMapping};
