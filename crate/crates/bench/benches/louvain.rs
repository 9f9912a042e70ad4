use comdet_bench::{geometric, SIZES};
use comdet_core::{color_graph, rebuild, run, run_phase, vf_compact, NoTrace, RunConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn bench_phase(c: &mut Criterion) {
    let mut group = c.benchmark_group("phase");
    group.sample_size(10);
    for (n, d) in SIZES {
        let g = geometric(n, d);
        let coloring = color_graph(&g);
        group.throughput(Throughput::Elements(g.num_edges() as u64));
        group.bench_with_input(BenchmarkId::new("uncolored", g.num_edges()), &g, |b, g| {
            b.iter(|| run_phase(g, &RunConfig::baseline(), None, 1, &mut NoTrace).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("colored", g.num_edges()), &g, |b, g| {
            b.iter(|| run_phase(g, &RunConfig::default(), Some(&coloring), 1, &mut NoTrace).unwrap())
        });
    }
    group.finish();
}

fn bench_heuristics(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristics");
    for (n, d) in SIZES {
        let g = geometric(n, d);
        group.throughput(Throughput::Elements(g.num_edges() as u64));
        group.bench_with_input(BenchmarkId::new("coloring", g.num_edges()), &g, |b, g| {
            b.iter(|| color_graph(g))
        });
        group.bench_with_input(BenchmarkId::new("vf", g.num_edges()), &g, |b, g| {
            b.iter(|| vf_compact(g))
        });
    }
    group.finish();
}

fn bench_rebuild(c: &mut Criterion) {
    let mut group = c.benchmark_group("rebuild");
    for (n, d) in SIZES {
        let g = geometric(n, d);
        let state = run_phase(&g, &RunConfig::baseline(), None, 1, &mut NoTrace)
            .unwrap()
            .state;
        group.throughput(Throughput::Elements(g.num_edges() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(g.num_edges()), &g, |b, g| {
            b.iter(|| rebuild(g, &state))
        });
    }
    group.finish();
}

fn bench_full_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("run");
    group.sample_size(10);
    let (n, d) = SIZES[1];
    let g = geometric(n, d);
    let variants = [
        ("baseline", RunConfig::baseline()),
        ("vf", RunConfig { use_coloring: false, ..RunConfig::default() }),
        ("vf_color", RunConfig { color_cutoff: 1_000, ..RunConfig::default() }),
    ];
    for (name, cfg) in variants {
        group.bench_function(name, |b| b.iter(|| run(&g, &cfg, &mut NoTrace).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_phase, bench_heuristics, bench_rebuild, bench_full_run);
criterion_main!(benches);
