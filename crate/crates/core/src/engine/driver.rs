use std::borrow::Cow;
use std::time::Instant;

use log::{debug, info, warn};

use super::{below_threshold, rebuild, run_phase, RunConfig, Stage, TraceRecord, TraceSink};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::heuristics::{color_graph, vf_compact, VfMapping};
use crate::modularity::{modularity, modularity_of_assignment, CommunityState};

/// Wall time per stage, in seconds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StageTimings {
    pub vf: f64,
    pub coloring: f64,
    pub clustering: f64,
    pub rebuild: f64,
}

impl StageTimings {
    pub fn total(&self) -> f64 {
        self.vf + self.coloring + self.clustering + self.rebuild
    }
}

/// Result of a full run: the per-phase maps and their composition.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    /// Vertices of the input graph.
    pub num_vertices: usize,
    /// Vertex compaction applied before the first phase.
    pub vf: Option<VfMapping>,
    /// `levels[p][v]` is the vertex of phase `p + 1`'s graph (equivalently the
    /// community) that vertex `v` of phase `p`'s graph ended up in.
    pub levels: Vec<Vec<VertexId>>,
    /// Final community of every original vertex, numbered densely from 0.
    pub assignment: Vec<usize>,
    /// Modularity of `assignment` on the input graph.
    pub modularity: f64,
    /// Modularity at the end of each kept phase.
    pub phase_modularity: Vec<f64>,
    /// Iterations over all executed phases, including a final phase without
    /// moves.
    pub iterations: usize,
    pub timings: StageTimings,
    /// Some phase stopped at the iteration cap.
    pub hit_iteration_cap: bool,
}

impl Hierarchy {
    /// Phases whose result was kept.
    pub fn phases(&self) -> usize {
        self.levels.len()
    }

    pub fn num_communities(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&c| c + 1)
    }

    /// Community of every original vertex after the first `depth` phases.
    pub fn assignment_at(&self, depth: usize) -> Vec<usize> {
        let base: Vec<VertexId> = match &self.vf {
            Some(vf) => vf.map().to_vec(),
            None => (0..self.num_vertices).collect(),
        };
        self.levels[..depth.min(self.levels.len())]
            .iter()
            .fold(base, |acc, level| acc.into_iter().map(|v| level[v]).collect())
    }
}

/// Runs the full multi-phase method on `g`.
///
/// Vertex following (when enabled) runs once up front. Phases run colored
/// with `theta_color` while coloring is enabled, the phase graph has at least
/// `color_cutoff` vertices, and the previous colored phase gained at least
/// `theta_color`; after that phases run uncolored with `theta_final`. The run
/// stops after a phase without moves, a phase that does not improve
/// modularity, or a phase whose relative gain is below `theta_final`.
pub fn run<S: TraceSink + Send + ?Sized>(g: &Graph, cfg: &RunConfig, sink: &mut S) -> Result<Hierarchy> {
    cfg.validate()?;
    if g.total_weight() <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    match cfg.worker_count {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
            pool.install(|| run_in_pool(g, cfg, sink))
        }
        None => run_in_pool(g, cfg, sink),
    }
}

fn run_in_pool<S: TraceSink + ?Sized>(g: &Graph, cfg: &RunConfig, sink: &mut S) -> Result<Hierarchy> {
    let mut timings = StageTimings::default();

    let vf = if cfg.use_vf {
        let started = Instant::now();
        let vf = vf_compact(g);
        timings.vf = started.elapsed().as_secs_f64();
        let q = modularity(vf.graph(), &CommunityState::singleton(vf.graph()))?;
        sink.record(&TraceRecord {
            phase: 0,
            iteration: 0,
            stage: Stage::Vf,
            modularity: q,
            moves: vf.merged_count(),
            millis: timings.vf * 1e3,
            theta: None,
        });
        debug!("vertex following merged {} vertices", vf.merged_count());
        Some(vf)
    } else {
        None
    };

    let mut levels: Vec<Vec<VertexId>> = Vec::new();
    let mut phase_modularity = Vec::new();
    let mut iterations = 0;
    let mut hit_iteration_cap = false;
    let mut coloring_active = cfg.use_coloring;

    {
        let mut current: Cow<'_, Graph> = Cow::Borrowed(vf.as_ref().map_or(g, |v| v.graph()));
        let mut q_current = modularity(&current, &CommunityState::singleton(&current))?;
        for phase in 1.. {
            coloring_active &= current.num_vertices() >= cfg.color_cutoff;
            let coloring = if coloring_active {
                let started = Instant::now();
                let c = color_graph(&current);
                let secs = started.elapsed().as_secs_f64();
                timings.coloring += secs;
                sink.record(&TraceRecord {
                    phase,
                    iteration: 0,
                    stage: Stage::Coloring,
                    modularity: q_current,
                    moves: 0,
                    millis: secs * 1e3,
                    theta: None,
                });
                debug!(
                    "phase {phase}: {} colors, class size rsd {:.3}",
                    c.num_colors(),
                    c.class_size_rsd()
                );
                Some(c)
            } else {
                None
            };

            let started = Instant::now();
            let outcome = run_phase(&current, cfg, coloring.as_ref(), phase, sink)?;
            timings.clustering += started.elapsed().as_secs_f64();
            iterations += outcome.iterations;
            hit_iteration_cap |= outcome.hit_iteration_cap;

            if outcome.moves == 0 {
                break;
            }
            if outcome.modularity < q_current {
                warn!(
                    "phase {phase} lowered modularity from {q_current} to {}; keeping the previous level",
                    outcome.modularity
                );
                break;
            }

            let started = Instant::now();
            let rebuilt = rebuild(&current, &outcome.state);
            let secs = started.elapsed().as_secs_f64();
            timings.rebuild += secs;
            sink.record(&TraceRecord {
                phase,
                iteration: outcome.iterations,
                stage: Stage::Rebuild,
                modularity: outcome.modularity,
                moves: 0,
                millis: secs * 1e3,
                theta: None,
            });
            info!(
                "phase {phase}: modularity {:.6}, {} communities, {} iterations",
                outcome.modularity,
                rebuilt.graph.num_vertices(),
                outcome.iterations
            );

            let converged = below_threshold(outcome.modularity, q_current, cfg.theta_final);
            if coloring.is_some() && below_threshold(outcome.modularity, q_current, cfg.theta_color) {
                coloring_active = false;
            }
            q_current = outcome.modularity;
            phase_modularity.push(q_current);
            levels.push(rebuilt.vertex_map);
            current = Cow::Owned(rebuilt.graph);
            if converged {
                break;
            }
        }
    }

    let mut hierarchy = Hierarchy {
        num_vertices: g.num_vertices(),
        vf,
        levels,
        assignment: Vec::new(),
        modularity: 0.0,
        phase_modularity,
        iterations,
        timings,
        hit_iteration_cap,
    };
    // the last level maps onto 0..k, so the composition is already dense
    hierarchy.assignment = hierarchy.assignment_at(usize::MAX);
    hierarchy.modularity = modularity_of_assignment(g, &hierarchy.assignment)?;
    Ok(hierarchy)
}
