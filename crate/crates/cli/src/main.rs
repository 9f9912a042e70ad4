//! `comdet`: community detection from the command line.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 I/O failure,
//! 3 malformed input, 4 edgeless graph, 5 partitions over different vertex
//! sets.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use comdet_core::graph::{read_assignment, write_assignment};
use comdet_core::{
    compare_partitions, degree_stats, load_graph, run, CsvTrace, Error, Format, LoadedGraph,
    NoTrace, RunConfig,
};
use log::info;

#[derive(Parser, Debug)]
#[command(name = "comdet", version, about = "Parallel Louvain community detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Detect communities and print `final_modularity,phases,iterations,seconds,stage_breakdown`.
    Detect(DetectArgs),
    /// Compare two assignment files and print `tp,fp,fn,tn,sp,se,oq,rand`.
    Compare(CompareArgs),
    /// Print `n,M,max_degree,avg_degree,rsd` for a graph.
    Stats(InputArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Graph file.
    #[arg(long, short)]
    input: PathBuf,
    /// Input format; guessed from the file extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write `vertex community` lines here.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write the per-iteration trace as CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "GRAPH_THREADS")]
    threads: Option<usize>,
    /// Skip vertex following.
    #[arg(long)]
    no_vf: bool,
    /// Never color phase graphs.
    #[arg(long)]
    no_coloring: bool,
    /// Relative gain threshold for uncolored phases and for stopping the run.
    #[arg(long, default_value_t = RunConfig::default().theta_final)]
    theta: f64,
    /// Relative gain threshold for colored phases.
    #[arg(long, default_value_t = RunConfig::default().theta_color)]
    theta_color: f64,
    /// Only color phase graphs with at least this many vertices.
    #[arg(long, default_value_t = RunConfig::default().color_cutoff)]
    color_cutoff: usize,
    /// Iteration cap per phase.
    #[arg(long, default_value_t = RunConfig::default().max_iterations_per_phase)]
    max_iters: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Reference assignment file.
    reference: PathBuf,
    /// Candidate assignment file.
    candidate: PathBuf,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn guess_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("graph" | "metis") => Format::Metis,
        Some("mtx") => Format::MatrixMarket,
        _ => Format::EdgeList,
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 2,
        Error::Parse { .. }
        | Error::NonPositiveWeight { .. }
        | Error::EmptyInput
        | Error::VertexOutOfRange { .. } => 3,
        Error::EdgelessGraph | Error::NoEdges => 4,
        Error::MismatchedVertexSets(_) => 5,
        _ => 1,
    }
}

/// Rounds to 6 decimals, trims trailing zeros, keeps at least one decimal.
fn fmt_ratio(x: f64) -> String {
    let s = format!("{x:.6}");
    let trimmed = s.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_owned()
    }
}

fn load(args: &InputArgs) -> Result<LoadedGraph, Error> {
    let format = args.format.unwrap_or_else(|| guess_format(&args.input));
    let started = Instant::now();
    let loaded = load_graph(&args.input, format)?;
    info!(
        "loaded {} ({format}): {} vertices, {} edges in {:.3}s",
        args.input.display(),
        loaded.graph.num_vertices(),
        loaded.graph.num_edges(),
        started.elapsed().as_secs_f64()
    );
    Ok(loaded)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn detect(args: &DetectArgs) -> Result<(), Error> {
    let cfg = RunConfig {
        theta_final: args.theta,
        theta_color: args.theta_color,
        color_cutoff: args.color_cutoff,
        use_vf: !args.no_vf,
        use_coloring: !args.no_coloring,
        max_iterations_per_phase: args.max_iters,
        worker_count: args.threads,
    };
    cfg.validate()?;
    let loaded = load(&args.input)?;

    let started = Instant::now();
    let hierarchy = match &args.trace {
        Some(path) => {
            let mut trace = CsvTrace::new(create(path)?);
            let h = run(&loaded.graph, &cfg, &mut trace)?;
            trace.finish()?.flush()?;
            h
        }
        None => run(&loaded.graph, &cfg, &mut NoTrace)?,
    };
    let seconds = started.elapsed().as_secs_f64();

    if let Some(path) = &args.output {
        write_assignment(&hierarchy.assignment, Some(&loaded.labels), create(path)?)?;
    }
    if hierarchy.hit_iteration_cap {
        log::warn!("at least one phase stopped at the iteration cap");
    }

    let t = &hierarchy.timings;
    println!(
        "{:.6},{},{},{:.6},vf={:.6};coloring={:.6};clustering={:.6};rebuild={:.6}",
        hierarchy.modularity,
        hierarchy.phases(),
        hierarchy.iterations,
        seconds,
        t.vf,
        t.coloring,
        t.clustering,
        t.rebuild
    );
    Ok(())
}

fn read_partition(path: &Path) -> Result<HashMap<String, String>, Error> {
    let rows = read_assignment(BufReader::new(File::open(path)?))?;
    Ok(rows.into_iter().collect())
}

fn compare(args: &CompareArgs) -> Result<(), Error> {
    let reference = read_partition(&args.reference)?;
    let candidate = read_partition(&args.candidate)?;
    if reference.len() != candidate.len() {
        return Err(Error::MismatchedVertexSets(format!(
            "{} has {} vertices, {} has {}",
            args.reference.display(),
            reference.len(),
            args.candidate.display(),
            candidate.len()
        )));
    }
    let mut vertices: Vec<&String> = reference.keys().collect();
    vertices.sort();
    let mut s = Vec::with_capacity(vertices.len());
    let mut p = Vec::with_capacity(vertices.len());
    for v in vertices {
        let c = candidate.get(v).ok_or_else(|| {
            Error::MismatchedVertexSets(format!(
                "vertex '{v}' missing from {}",
                args.candidate.display()
            ))
        })?;
        s.push(&reference[v]);
        p.push(c);
    }
    let c = compare_partitions(&s, &p)?;
    println!(
        "{},{},{},{},{},{},{},{}",
        c.tp,
        c.fp,
        c.fn_,
        c.tn,
        fmt_ratio(c.sp),
        fmt_ratio(c.se),
        fmt_ratio(c.oq),
        fmt_ratio(c.rand)
    );
    Ok(())
}

fn stats(args: &InputArgs) -> Result<(), Error> {
    let loaded = load(args)?;
    let g = &loaded.graph;
    let d = degree_stats(g)?;
    println!(
        "{},{},{},{:.3},{:.3}",
        g.num_vertices(),
        g.num_edges(),
        d.max_degree,
        d.avg_degree,
        d.rsd
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Detect(args) => detect(args),
        Command::Compare(args) => compare(args),
        Command::Stats(args) => stats(args),
    };
    match result {
        Ok(()) => {
            let _ = io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
