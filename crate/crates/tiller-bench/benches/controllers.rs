use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use tiller_bench::{it2_controller, type1_controller};
use tiller_core::harness::{run_batch, Cell, EngineParams};
use tiller_core::it2::{infer_it2, km_type_reduce, BlurredBank};
use tiller_core::fuzzy::{MFBank, RuleBase};

fn bench_pipelines(c: &mut Criterion) {
    let t1 = type1_controller();
    c.bench_function("type1_rudder_change", |b| {
        b.iter(|| t1.rudder_change(black_box(12.0), black_box(-3.0)))
    });

    for m in [5.0, 20.0] {
        let ctrl = it2_controller(m);
        c.bench_function(&format!("it2_rudder_change_m{m}"), |b| {
            b.iter(|| ctrl.rudder_change(black_box(12.0), black_box(-3.0)))
        });
    }
}

fn bench_type_reduction(c: &mut Criterion) {
    let rules = RuleBase::macvicar_whelan();
    let error_bank = MFBank::uniform(90.0).unwrap();
    let delta_bank = MFBank::uniform(30.0).unwrap();
    let output_bank = MFBank::uniform(15.0).unwrap();
    let blurred_error = BlurredBank::from_bank(&error_bank, 10.0).unwrap();
    let blurred_delta = BlurredBank::from_bank(&delta_bank, 10.0).unwrap();
    let set = infer_it2(&rules, 12.0, -3.0, &blurred_error, &blurred_delta, &output_bank, 201).unwrap();
    c.bench_function("km_type_reduce_201", |b| b.iter(|| km_type_reduce(black_box(&set))));
}

fn bench_episode(c: &mut Criterion) {
    let cell = Cell::parse("E_Single-50_it2-10").unwrap();
    let params = EngineParams::default();
    c.bench_function("single50_episode_batch3", |b| {
        b.iter(|| run_batch(black_box(&cell), 3, 42, &params, None).unwrap())
    });
}

criterion_group!(benches, bench_pipelines, bench_type_reduction, bench_episode);
criterion_main!(benches);
