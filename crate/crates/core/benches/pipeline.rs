//! Pipeline timings with one worker thread against the full rayon pool.
//!
//! Building with `--no-default-features` removes rayon altogether; the
//! one-thread pool here is the closest in-process stand-in for that mode.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use endofusion::endomorphizer::{decompose, endomorphize, EndomorphizeOptions};
use endofusion::io::fixtures::fixture;
use endofusion::tube::TubeAlgebra;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn stages(c: &mut Criterion) {
    let pools = pools();
    for name in ["vec_S3", "rep_S3_self", "vec_A4"] {
        let (cat, module) = fixture(name).unwrap();
        let opts = EndomorphizeOptions::default();
        let mut group = c.benchmark_group(name);
        group.sample_size(20);
        for (mode, pool) in &pools {
            group.bench_function(BenchmarkId::new("tube", mode), |b| {
                pool.install(|| b.iter(|| TubeAlgebra::new(&cat, &module).unwrap()))
            });
            group.bench_function(BenchmarkId::new("decompose", mode), |b| {
                pool.install(|| b.iter(|| decompose(&cat, &module, &opts).unwrap()))
            });
            group.bench_function(BenchmarkId::new("endomorphize", mode), |b| {
                pool.install(|| b.iter(|| endomorphize(&cat, &module, &opts).unwrap()))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, stages);
criterion_main!(benches);
