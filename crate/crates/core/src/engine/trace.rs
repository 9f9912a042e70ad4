use std::fmt;
use std::io::{self, Write};

use crate::graph::Graph;
use crate::modularity::CommunityState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Vf,
    Coloring,
    Clustering,
    Rebuild,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Vf => "vf",
            Stage::Coloring => "coloring",
            Stage::Clustering => "clustering",
            Stage::Rebuild => "rebuild",
        })
    }
}

/// One line of the run trace. Phases are numbered from 1; vertex following
/// is reported as phase 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub phase: usize,
    pub iteration: usize,
    pub stage: Stage,
    /// Modularity after the step, on the current phase's graph.
    pub modularity: f64,
    pub moves: usize,
    pub millis: f64,
    /// Threshold governing the phase; set on clustering records only.
    pub theta: Option<f64>,
}

/// Receives trace records as the run progresses.
pub trait TraceSink {
    fn record(&mut self, rec: &TraceRecord);

    /// Called after every clustering iteration with the phase graph and the
    /// state reached. Used for consistency checks.
    fn inspect(&mut self, _g: &Graph, _s: &CommunityState) {}
}

impl TraceSink for Vec<TraceRecord> {
    fn record(&mut self, rec: &TraceRecord) {
        self.push(rec.clone());
    }
}

impl<T: TraceSink + ?Sized> TraceSink for &mut T {
    fn record(&mut self, rec: &TraceRecord) {
        (**self).record(rec)
    }

    fn inspect(&mut self, g: &Graph, s: &CommunityState) {
        (**self).inspect(g, s)
    }
}

/// Discards everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoTrace;

impl TraceSink for NoTrace {
    fn record(&mut self, _rec: &TraceRecord) {}
}

/// Writes `phase,iteration,stage,modularity,moves,millis` lines.
pub struct CsvTrace<W: Write> {
    out: W,
    error: Option<io::Error>,
}

impl<W: Write> CsvTrace<W> {
    pub const HEADER: &'static str = "phase,iteration,stage,modularity,moves,millis";

    pub fn new(mut out: W) -> Self {
        let error = writeln!(out, "{}", Self::HEADER).err();
        CsvTrace { out, error }
    }

    /// Flushes and returns the writer, or the first write error seen.
    pub fn finish(mut self) -> io::Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> TraceSink for CsvTrace<W> {
    fn record(&mut self, rec: &TraceRecord) {
        if self.error.is_some() {
            return;
        }
        if let Err(e) = writeln!(
            self.out,
            "{},{},{},{:.12},{},{:.3}",
            rec.phase, rec.iteration, rec.stage, rec.modularity, rec.moves, rec.millis
        ) {
            self.error = Some(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_lines() {
        let mut t = CsvTrace::new(Vec::new());
        t.record(&TraceRecord {
            phase: 1,
            iteration: 2,
            stage: Stage::Clustering,
            modularity: 0.25,
            moves: 7,
            millis: 1.5,
            theta: Some(1e-6),
        });
        let text = String::from_utf8(t.finish().unwrap()).unwrap();
        assert_eq!(
            text,
            "phase,iteration,stage,modularity,moves,millis\n1,2,clustering,0.250000000000,7,1.500\n"
        );
    }
}
