use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nildegen::catalogue::AlgebraId;
use nildegen::degeneration::{search_witness, ExecutionMode, SearchConfig};
use nildegen::fields::Field;

// l1 -> c1 never succeeds, so every run spends the whole budget.
fn exhaustive_budget(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let mut group = c.benchmark_group("search_l1_c1_gf5");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    for budget in [2_000u64, 20_000] {
        for mode in [ExecutionMode::Sequential, ExecutionMode::Parallel] {
            let cfg = SearchConfig::new(2, budget, 0).with_mode(mode);
            group.bench_with_input(
                BenchmarkId::new(format!("{mode:?}"), budget),
                &cfg,
                |b, cfg| {
                    b.iter(|| {
                        search_witness(&AlgebraId::L1, &AlgebraId::C1, &f, black_box(cfg)).unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn first_hit(c: &mut Criterion) {
    let f = Field::prime(7).unwrap();
    let src = AlgebraId::A3kappa(f.from_int(2));
    let mut group = c.benchmark_group("search_a3_l1_gf7");
    group.sample_size(10);
    for mode in [ExecutionMode::Sequential, ExecutionMode::Parallel] {
        let cfg = SearchConfig::new(2, 100_000, 0).with_mode(mode);
        group.bench_function(format!("{mode:?}"), |b| {
            b.iter(|| search_witness(&src, &AlgebraId::L1, &f, black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exhaustive_budget, first_hit);
criterion_main!(benches);
