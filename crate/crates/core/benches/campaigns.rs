use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use daggerlab::lemmas::{self, Ctx};
use daggerlab::par;
use daggerlab::projspan::{saturation_check, DEFAULT_GENERATORS, DEFAULT_MAX_LEN};
use daggerlab::random;
use daggerlab::scalar::{FieldTag, Tolerance};

fn checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    group.sample_size(10);
    for (field, id) in [
        (FieldTag::Complex, "axioms.h5-sqrt"),
        (FieldTag::Quaternion, "axioms.h3-complement"),
        (FieldTag::Complex, "reconstruct.functor"),
        (FieldTag::Real, "axioms.h2-colimit"),
    ] {
        let check = lemmas::find(id).unwrap();
        let ctx = Ctx::new(field, &[], 0, Tolerance::default());
        let label = format!("{id}/{field}");
        group.bench_with_input(BenchmarkId::new("parallel", &label), &ctx, |b, ctx| {
            b.iter(|| black_box(lemmas::run_check(&check, ctx, None)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &ctx, |b, ctx| {
            b.iter(|| black_box(lemmas::run_check_seq(&check, ctx, None)))
        });
    }
    group.finish();
}

fn unitaries(c: &mut Criterion) {
    let mut group = c.benchmark_group("unitaries");
    let work = |t: usize| {
        let mut rng = random::rng(0, "bench", t as u64);
        random::unitary(FieldTag::Quaternion, 6, &mut rng)
    };
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(par::map_trials(256, work)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(par::map_trials_seq(256, work)))
    });
    group.finish();
}

fn span(c: &mut Criterion) {
    let mut group = c.benchmark_group("span");
    group.sample_size(10);
    for dim in [3, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, &dim| {
            b.iter(|| {
                black_box(saturation_check(
                    FieldTag::Complex,
                    dim,
                    0,
                    DEFAULT_MAX_LEN,
                    DEFAULT_GENERATORS,
                ))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, checks, unitaries, span);
criterion_main!(benches);
