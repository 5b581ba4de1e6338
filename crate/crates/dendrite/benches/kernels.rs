//! Benchmarks for the exact-metric hot paths, comparing the crate's
//! (feature-gated, rayon-backed) kernels against a straightforward
//! sequential double loop over the same exact arithmetic.
//!
//! Run `cargo bench` for the default (parallel) build and
//! `cargo bench --no-default-features` to time the sequential fallback of
//! the library kernels themselves.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dendrite::dynamics::omega_approx;
use dendrite::geometry::{build_net_dr, PathPoint};
use dendrite::hyperspace::hausdorff_nets;
use dendrite::itinerary::special_point;
use dendrite::rational::{rat, rat_int, Rat};

fn sequential_hausdorff(a: &[PathPoint], b: &[PathPoint]) -> Rat {
    let directed = |from: &[PathPoint], to: &[PathPoint]| {
        from.iter()
            .map(|x| to.iter().map(|y| x.distance(y)).min().unwrap())
            .max()
            .unwrap()
    };
    directed(a, b).max(directed(b, a))
}

fn bench_hausdorff(c: &mut Criterion) {
    let tail_tol = rat(1, 256);
    let eps = rat(1, 64);
    let seed = special_point(&rat_int(1)).unwrap();
    let omega = omega_approx(&seed, 200, 2000, &tail_tol);
    let net = build_net_dr(&rat_int(1), &eps, 12).unwrap();

    let mut group = c.benchmark_group("hausdorff_omega_vs_net");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("library", "indexed"), |bch| {
        bch.iter(|| hausdorff_nets(&omega.points, &net, &tail_tol).unwrap())
    });
    let paths_a: Vec<PathPoint> = omega
        .points
        .points
        .iter()
        .map(|p| PathPoint::from_itinerary(p, &tail_tol).unwrap())
        .collect();
    let paths_b: Vec<PathPoint> = net
        .points
        .iter()
        .map(|p| PathPoint::from_itinerary(p, &tail_tol).unwrap())
        .collect();
    group.bench_function(BenchmarkId::new("baseline", "dense_seq"), |bch| {
        bch.iter(|| sequential_hausdorff(&paths_a, &paths_b))
    });
    group.finish();
}

fn bench_net_build(c: &mut Criterion) {
    let eps = rat(1, 64);
    c.bench_function("build_net_dr_J16", |b| {
        b.iter(|| build_net_dr(&rat(3, 4), &eps, 16).unwrap())
    });
}

fn bench_orbit(c: &mut Criterion) {
    let seed = special_point(&rat_int(1)).unwrap();
    c.bench_function("orbit_10k_steps", |b| {
        b.iter(|| {
            let mut cur = seed.clone();
            for _ in 0..10_000 {
                cur = dendrite::itinerary::apply_f(&cur);
            }
            cur
        })
    });
}

criterion_group!(benches, bench_hausdorff, bench_net_build, bench_orbit);
criterion_main!(benches);
