use batlz_bench::repetitive;
use batlz_core::{Algo, CompressedFile, Space, Text, Workspace, UNBOUNDED};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn parsers(c: &mut Criterion) {
    let bytes = repetitive(2_000, 50);
    let text = Text::ingest(&bytes).unwrap();
    let ws = Workspace::new(&text);
    let mut g = c.benchmark_group("parse");
    g.throughput(Throughput::Bytes(bytes.len() as u64));
    g.sample_size(10);
    for algo in Algo::ALL {
        let bound = if algo == Algo::Lz { UNBOUNDED } else { 8 };
        g.bench_with_input(BenchmarkId::new(algo.name(), bytes.len()), &bound, |b, &bound| {
            b.iter(|| ws.run(algo, bound, Space::Linear))
        });
    }
    g.bench_function("greedy_fast_space", |b| b.iter(|| ws.run(Algo::Greedy, 8, Space::Fast)));
    g.finish();
}

fn end_to_end(c: &mut Criterion) {
    let bytes = repetitive(2_000, 50);
    let mut g = c.benchmark_group("compress");
    g.throughput(Throughput::Bytes(bytes.len() as u64));
    g.sample_size(10);
    g.bench_function("greedier_c8", |b| {
        b.iter(|| {
            let text = Text::ingest(&bytes).unwrap();
            let p = Workspace::new(&text).run(Algo::Greedier, 8, Space::Linear);
            CompressedFile::new(&p, &text).to_bytes()
        })
    });
    g.finish();

    let text = Text::ingest(&bytes).unwrap();
    let p = Workspace::new(&text).run(Algo::Greedier, 8, Space::Linear);
    let file = CompressedFile::from_bytes(&CompressedFile::new(&p, &text).to_bytes()).unwrap();
    let mut g = c.benchmark_group("decode");
    g.throughput(Throughput::Bytes(bytes.len() as u64));
    g.bench_function("decompress", |b| b.iter(|| file.decompress()));
    g.bench_function("extract_all", |b| b.iter(|| file.extract(1, bytes.len()).unwrap()));
    g.finish();
}

criterion_group!(benches, parsers, end_to_end);
criterion_main!(benches);
