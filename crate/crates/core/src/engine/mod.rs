//! Parallel Louvain: vertex sweeps, phases, graph rebuilding and the
//! multi-phase driver.

mod driver;
mod phase;
mod rebuild;
mod sweep;
mod trace;

pub use driver::{run, Hierarchy, StageTimings};
pub use phase::{run_phase, PhaseOutcome};
pub use rebuild::{rebuild, Rebuilt};
pub use sweep::run_iteration;
pub use trace::{CsvTrace, NoTrace, Stage, TraceRecord, TraceSink};

use crate::error::{Error, Result};

/// Thresholds and heuristic switches for a run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Relative modularity gain below which a phase (and the run) stops.
    pub theta_final: f64,
    /// Threshold used while phases run on a colored graph.
    pub theta_color: f64,
    /// Coloring is only applied to phase inputs with at least this many vertices.
    pub color_cutoff: usize,
    pub use_vf: bool,
    pub use_coloring: bool,
    pub max_iterations_per_phase: usize,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub worker_count: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            theta_final: 1e-6,
            theta_color: 1e-2,
            color_cutoff: 100_000,
            use_vf: true,
            use_coloring: true,
            max_iterations_per_phase: 10_000,
            worker_count: None,
        }
    }
}

impl RunConfig {
    /// Minimum-label heuristic only: no vertex following, no coloring.
    pub fn baseline() -> Self {
        RunConfig {
            use_vf: false,
            use_coloring: false,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.theta_final) || !positive(self.theta_color) {
            return Err(Error::InvalidConfig("thresholds must be positive".into()));
        }
        if self.theta_color < self.theta_final {
            return Err(Error::InvalidConfig(format!(
                "theta_color ({}) must not be below theta_final ({})",
                self.theta_color, self.theta_final
            )));
        }
        if self.max_iterations_per_phase == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations_per_phase must be at least 1".into(),
            ));
        }
        if self.worker_count == Some(0) {
            return Err(Error::InvalidConfig("worker_count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Termination test between consecutive modularity values. Falls back to the
/// absolute difference when the previous value is (numerically) zero.
pub(crate) fn below_threshold(current: f64, previous: f64, theta: f64) -> bool {
    if previous.abs() < 1e-15 {
        (current - previous).abs() < theta
    } else {
        ((current - previous) / previous).abs() < theta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        RunConfig::default().validate().unwrap();
        RunConfig::baseline().validate().unwrap();
        let bad = [
            RunConfig { theta_final: 0.0, ..Default::default() },
            RunConfig { theta_color: -1.0, ..Default::default() },
            RunConfig { theta_color: 1e-8, ..Default::default() },
            RunConfig { max_iterations_per_phase: 0, ..Default::default() },
            RunConfig { worker_count: Some(0), ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn threshold_guard_for_zero_previous() {
        assert!(below_threshold(1e-7, 0.0, 1e-6));
        assert!(!below_threshold(1e-5, 0.0, 1e-6));
        assert!(below_threshold(0.5000001, 0.5, 1e-6));
        assert!(!below_threshold(0.51, 0.5, 1e-6));
        // relative test uses the magnitude of the previous value
        assert!(!below_threshold(-0.2, -0.3, 1e-2));
    }
}
