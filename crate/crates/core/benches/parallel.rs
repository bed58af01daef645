use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vnx_core::dictionary::{atomic_words, DictConfig, Dictionary, Word};
use vnx_core::experiment::{run_bench, ExperimentConfig};
use vnx_core::motif::Motif;
use vnx_core::par::Exec;

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("cactus_sweep");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let mut cfg = ExperimentConfig::from_text("family=cactus\nsizes=10,15,20\nseeds=0..8\ndict=builtin:cactus\n").unwrap();
        cfg.exec = exec;
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &cfg, |b, cfg| b.iter(|| run_bench(cfg).unwrap()));
    }
    group.finish();
}

fn bench_dictionary(c: &mut Criterion) {
    let mut words = vec![Word::chain()];
    for name in ["Y", "D", "K4", "B"] {
        words.extend(atomic_words(&Motif::named(name).unwrap()));
    }
    let mut group = c.benchmark_group("dictionary_edges");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let cfg = DictConfig { exec, ..DictConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &cfg, |b, cfg| b.iter(|| Dictionary::from_words(words.clone(), cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_dictionary);
criterion_main!(benches);
