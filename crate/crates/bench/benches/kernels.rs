use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use jtwist_core::{
    binomid, hopfcheck, starprod, twists, GeneratorContext, SpaceConfig, TensorElem, UMode,
};
use num_rational::BigRational;
use std::hint::black_box;

fn ctx() -> GeneratorContext {
    GeneratorContext::standard()
}

fn bench_twist_construction(c: &mut Criterion) {
    c.bench_function("fgz_inv symbolic N=4", |b| {
        b.iter(|| black_box(twists::fgz_inv(&ctx(), &UMode::Symbolic, 4)))
    });
    c.bench_function("fru_inv symbolic N=4", |b| {
        b.iter(|| black_box(twists::fru_inv(&ctx(), &UMode::Symbolic, 4).unwrap()))
    });
}

fn bench_tensor_mul(c: &mut Criterion) {
    let f = twists::fgz_inv(&ctx(), &UMode::Symbolic, 4);
    c.bench_function("tensor_mul fgz*fgz N=4", |b| {
        b.iter(|| black_box(TensorElem::tensor_mul(&f, &f).unwrap()))
    });
}

fn bench_cocycle(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle");
    group.sample_size(10);
    for n in [3u32, 4] {
        let f = twists::fgz_inv(&ctx(), &UMode::Symbolic, n);
        group.bench_function(format!("symbolic N={n}"), |b| {
            b.iter(|| black_box(hopfcheck::cocycle_residual(&f).unwrap()))
        });
    }
    group.finish();
}

fn bench_lemma(c: &mut Criterion) {
    let mut group = c.benchmark_group("binomial-identity");
    group.sample_size(10);
    group.bench_function("sweep K=3", |b| {
        b.iter(|| black_box(binomid::check_lemma(3)))
    });
    group.finish();
}

fn bench_planewave_assoc(c: &mut Criterion) {
    let cfg = SpaceConfig::standard2();
    let u = BigRational::new(1.into(), 2.into());
    let kappa = BigRational::from_integer(1.into());
    c.bench_function("plane-wave assoc 64 triples", |b| {
        b.iter_batched(
            || (),
            |_| black_box(starprod::check_assoc_planewave(&u, &kappa, &cfg, 64, 0)),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_twist_construction,
    bench_tensor_mul,
    bench_cocycle,
    bench_lemma,
    bench_planewave_assoc
);
criterion_main!(benches);
