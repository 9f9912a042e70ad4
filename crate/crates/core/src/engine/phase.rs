use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use log::{debug, warn};

use super::sweep::Sweeper;
use super::{below_threshold, RunConfig, Stage, TraceRecord, TraceSink};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::heuristics::Coloring;
use crate::modularity::{modularity_from_aggregates, CommunityState};

#[derive(Clone, Debug)]
pub struct PhaseOutcome {
    pub state: CommunityState,
    /// Modularity of `state`.
    pub modularity: f64,
    pub iterations: usize,
    /// Total vertex moves over all iterations.
    pub moves: usize,
    /// The phase stopped at `max_iterations_per_phase` without converging.
    pub hit_iteration_cap: bool,
    /// The phase stopped because an iteration reproduced an earlier
    /// partition. `state` is then the best partition seen in the phase.
    pub cycled: bool,
}

/// Runs one phase from the singleton partition of `g`.
///
/// Without a coloring each iteration is a single sweep over all vertices and
/// the phase stops once the relative modularity change drops below
/// `theta_final`. With a coloring each iteration runs one stage per color
/// class in ascending color order, and `theta_color` applies. An iteration
/// without moves also ends the phase.
pub fn run_phase<S: TraceSink + ?Sized>(
    g: &Graph,
    cfg: &RunConfig,
    coloring: Option<&Coloring>,
    phase: usize,
    sink: &mut S,
) -> Result<PhaseOutcome> {
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    let theta = if coloring.is_some() {
        cfg.theta_color
    } else {
        cfg.theta_final
    };
    let all: Vec<VertexId>;
    let stages: Vec<Vec<VertexId>> = match coloring {
        Some(c) => c.classes(),
        None => {
            all = (0..g.num_vertices()).collect();
            vec![all]
        }
    };

    let mut state = CommunityState::singleton(g);
    let mut sweeper = Sweeper::new(&state);
    let mut previous = f64::NEG_INFINITY;
    let mut current;
    let mut iterations = 0;
    let mut total_moves = 0;
    let mut hit_iteration_cap = false;
    let mut cycled = false;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut best: Vec<usize> = Vec::new();
    let mut best_q = f64::NEG_INFINITY;

    loop {
        let started = Instant::now();
        iterations += 1;
        let moves: usize = stages
            .iter()
            .map(|stage| sweeper.sweep(g, &mut state, stage))
            .sum();
        total_moves += moves;
        current = modularity_from_aggregates(m, &state.a_tot, &state.w_internal);
        sink.record(&TraceRecord {
            phase,
            iteration: iterations,
            stage: Stage::Clustering,
            modularity: current,
            moves,
            millis: started.elapsed().as_secs_f64() * 1e3,
            theta: Some(theta),
        });
        sink.inspect(g, &state);

        if moves == 0 {
            break;
        }
        if previous.is_finite() && below_threshold(current, previous, theta) {
            break;
        }
        // sweeps are deterministic, so a repeated partition repeats forever
        if !seen.insert(fingerprint(&state.assignment)) {
            if best_q > current {
                state = CommunityState::from_assignment(g, &best)?;
                current = modularity_from_aggregates(m, &state.a_tot, &state.w_internal);
            }
            debug!("phase {phase} revisited a partition after {iterations} iterations");
            cycled = true;
            break;
        }
        if current > best_q {
            best.clear();
            best.extend_from_slice(&state.assignment);
            best_q = current;
        }
        if iterations >= cfg.max_iterations_per_phase {
            warn!(
                "phase {phase} stopped after {iterations} iterations without converging"
            );
            hit_iteration_cap = true;
            break;
        }
        previous = current;
    }

    Ok(PhaseOutcome {
        state,
        modularity: current,
        iterations,
        moves: total_moves,
        hit_iteration_cap,
        cycled,
    })
}

fn fingerprint(assignment: &[usize]) -> u64 {
    let mut h = DefaultHasher::new();
    assignment.hash(&mut h);
    h.finish()
}
