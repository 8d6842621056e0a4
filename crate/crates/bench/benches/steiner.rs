use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sdiam_bench::{petersen, sample_graphs};
use sdiam_core::steiner::{k_subsets, steiner_diameter, steiner_distance_with};
use sdiam_core::{Engine, SteinerConfig, VertexSet};

fn engines(c: &mut Criterion) {
    let g = sample_graphs(12, 1, 7).remove(0);
    let mut group = c.benchmark_group("steiner_distance");
    for k in [3, 6, 9] {
        let sets: Vec<VertexSet> = k_subsets(12, k).step_by(37).take(32).collect();
        for engine in [Engine::Complement, Engine::TerminalDp] {
            let cfg = SteinerConfig::with_engine(engine);
            group.bench_with_input(BenchmarkId::new(engine.to_string(), k), &sets, |b, sets| {
                b.iter(|| {
                    for &s in sets {
                        black_box(steiner_distance_with(&g, s, &cfg).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn diameter(c: &mut Criterion) {
    let g = petersen();
    let cfg = SteinerConfig::default();
    let mut group = c.benchmark_group("steiner_diameter_petersen");
    for k in [3, 7] {
        group.bench_function(BenchmarkId::from_parameter(k), |b| {
            b.iter(|| black_box(steiner_diameter(&g, k, &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, engines, diameter);
criterion_main!(benches);
