use chemo_bench::analytic_states;
use chemo_core::presets::benchmark_params;
use chemo_core::{derive_boundary, validate_state, SteadyStateFamily};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_jet_evaluation(c: &mut Criterion) {
    let states = analytic_states();
    let mut group = c.benchmark_group("jet_1001_points");
    for ss in &states {
        group.bench_function(ss.family.name(), |b| {
            b.iter(|| {
                let mut acc = 0.0;
                for i in 0..=1000 {
                    let x = i as f64 / 1000.0;
                    let j = ss.jet(black_box(x)).unwrap();
                    acc += j.u + j.v_xx;
                }
                acc
            })
        });
    }
    group.finish();
}

fn bench_constraints(c: &mut Criterion) {
    let params = benchmark_params();
    c.bench_function("derive_boundary_all_families", |b| {
        b.iter(|| {
            for family in SteadyStateFamily::ALL {
                black_box(derive_boundary(family, &params, black_box(4.0)).unwrap());
            }
        })
    });
    let rows: Vec<_> = SteadyStateFamily::ALL
        .iter()
        .map(|&f| derive_boundary(f, &params, 4.0).unwrap().boundary.unwrap())
        .collect();
    c.bench_function("validate_state_4x4", |b| {
        b.iter(|| {
            for bd in &rows {
                for family in SteadyStateFamily::ALL {
                    black_box(validate_state(family, &params, bd).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, bench_jet_evaluation, bench_constraints);
criterion_main!(benches);
