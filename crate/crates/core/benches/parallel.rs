//! Data-parallel core against a single thread. With the default features each
//! workload runs on a rayon pool sized to the machine and on a one-thread
//! pool; built with `--no-default-features` it runs the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use splitbasis::arrangement::{default_vector, verify_region_basis};
use splitbasis::parallel;
use splitbasis::splitting::{orbit_report, verify_splitting_basis, VerifyOptions};
use splitbasis::LatticeFamily;

fn settings() -> Vec<(String, usize)> {
    if !parallel::enabled() {
        return vec![("sequential".into(), 1)];
    }
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut out = vec![(format!("rayon-{cores}"), cores)];
    if cores > 1 {
        out.push(("rayon-1".into(), 1));
    }
    out
}

fn basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("splitting-basis");
    group.sample_size(10);
    for family in [
        LatticeFamily::a(5).unwrap(),
        LatticeFamily::b(3).unwrap(),
        LatticeFamily::d(4).unwrap(),
    ] {
        for (label, threads) in settings() {
            group.bench_with_input(BenchmarkId::new(label, family.id()), &family, |b, f| {
                b.iter(|| parallel::with_threads(threads, || verify_splitting_basis(f, VerifyOptions::default())))
            });
        }
    }
    group.finish();
}

fn regions(c: &mut Criterion) {
    let mut group = c.benchmark_group("region-basis");
    group.sample_size(10);
    for family in [LatticeFamily::a(4).unwrap(), LatticeFamily::b(3).unwrap()] {
        let v = default_vector(&family).unwrap();
        for (label, threads) in settings() {
            group.bench_with_input(BenchmarkId::new(label, family.id()), &family, |b, f| {
                b.iter(|| parallel::with_threads(threads, || verify_region_basis(f, &v)))
            });
        }
    }
    group.finish();
}

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbits");
    group.sample_size(10);
    for (label, threads) in settings() {
        group.bench_function(BenchmarkId::new(label, "AT(5;T=1,2)"), |b| {
            b.iter(|| parallel::with_threads(threads, || orbit_report(5, &[1, 2])))
        });
    }
    group.finish();
}

criterion_group!(benches, basis, regions, orbits);
criterion_main!(benches);
