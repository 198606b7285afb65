use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use documint_bench::{fixtures_dir, prose, synthetic_module};
use documint_core::harness::{render_report, ReportFormat, ReportInput};
use documint_core::{
    accuracy, conciseness, embed_builtin, load_scores, mine_tree, scan_str, strip_docstring, text_stats, MineConfig,
};

fn parser(c: &mut Criterion) {
    let mut group = c.benchmark_group("parser");
    for n in [10, 100, 1000] {
        let src = synthetic_module(n);
        group.throughput(Throughput::Bytes(src.len() as u64));
        group.bench_with_input(BenchmarkId::new("scan", n), &src, |b, src| {
            b.iter(|| scan_str(black_box(src), "bench.py").unwrap())
        });
    }
    let recs = scan_str(&synthetic_module(100), "bench.py").unwrap();
    group.bench_function("strip_100", |b| {
        b.iter(|| recs.iter().map(|r| strip_docstring(black_box(r)).len()).sum::<usize>())
    });
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("metrics");
    for words in [20, 200] {
        let text = prose(words);
        group.bench_with_input(BenchmarkId::new("text_stats", words), &text, |b, t| b.iter(|| text_stats(black_box(t))));
        group.bench_with_input(BenchmarkId::new("conciseness", words), &text, |b, t| b.iter(|| conciseness(black_box(t))));
        group.bench_with_input(BenchmarkId::new("embed_builtin", words), &text, |b, t| {
            b.iter(|| embed_builtin(black_box(t), 256))
        });
    }
    let g = embed_builtin(&prose(60), 256).unwrap().values;
    let e = embed_builtin(&prose(45), 256).unwrap().values;
    group.bench_function("cosine_256", |b| b.iter(|| accuracy(black_box(&g), black_box(&e))));
    group.finish();
}

fn mining(c: &mut Criterion) {
    let root = fixtures_dir().join("parser/corpus");
    let mut group = c.benchmark_group("mining");
    for threads in [1, 4] {
        let cfg = MineConfig {
            threads: Some(threads),
            ..MineConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("parser_corpus", threads), &cfg, |b, cfg| {
            b.iter(|| mine_tree(&root, "bench", cfg).unwrap())
        });
    }
    group.finish();
}

fn reports(c: &mut Criterion) {
    let runs = load_scores(&fixtures_dir().join("reports/four_models.json")).unwrap();
    c.bench_function("report/four_models_md", |b| {
        b.iter(|| render_report(ReportInput::Runs(black_box(&runs)), ReportFormat::Markdown))
    });
}

criterion_group!(benches, parser, metrics, mining, reports);
criterion_main!(benches);
