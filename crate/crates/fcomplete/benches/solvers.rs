use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fcomplete::par::Exec;
use fcomplete::pseudosplit::{pseudosplit_complete_with, PseudosplitConfig};
use fcomplete::threshold::{threshold_complete_with, ColoringConfig};
use fcomplete::tp::{tp_complete_with, TpConfig};
use fcomplete::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn graph(n: usize, p: f64, seed: u64) -> Graph {
    Graph::random(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn vital_pmcs(c: &mut Criterion) {
    let g = graph(14, 0.6, 1);
    let mut group = c.benchmark_group("tp_vital_pmcs");
    for k in [3, 5] {
        for (name, exec) in MODES {
            let cfg = TpConfig { exec, ..TpConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| tp_complete_with(black_box(&g), k, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn threshold_colorings(c: &mut Criterion) {
    let g = graph(9, 0.5, 2);
    let mut group = c.benchmark_group("threshold_colorings");
    group.sample_size(10);
    for k in [3, 4] {
        for (name, exec) in MODES {
            let cfg = ColoringConfig { exec, ..ColoringConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| threshold_complete_with(black_box(&g), k, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn pseudosplit_seeds(c: &mut Criterion) {
    let g = graph(9, 0.5, 3);
    let mut group = c.benchmark_group("pseudosplit_seeds");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = PseudosplitConfig { exec, check_lemma: true };
        group.bench_function(name, |b| b.iter(|| pseudosplit_complete_with(black_box(&g), 3, &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, vital_pmcs, threshold_colorings, pseudosplit_seeds);
criterion_main!(benches);
