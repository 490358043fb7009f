use std::hint::black_box;
use std::time::Duration;

use criterion::{BenchmarkId, Criterion};
use logflex::cxcurve::{critical_points_direct, critical_points_tracked, SolverOptions};
use logflex::families;
use logflex::{regular_subdivision, synthesize_signs, verify_theorem, TwistSet, VerifyOptions};
use logflex_bench::honeycombs;

fn subdivision(c: &mut Criterion) {
    let mut group = c.benchmark_group("regular_subdivision");
    for (d, fam, _) in honeycombs(6) {
        let poly = fam.tropicalization();
        group.bench_with_input(BenchmarkId::from_parameter(d), &poly, |b, p| {
            b.iter(|| regular_subdivision(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_signs");
    for (d, _, curve) in honeycombs(6).into_iter().skip(1) {
        let empty = TwistSet::default();
        group.bench_with_input(BenchmarkId::from_parameter(d), &curve, |b, c| {
            b.iter(|| synthesize_signs(black_box(c), &empty).unwrap())
        });
    }
    group.finish();
}

fn critical_points(c: &mut Criterion) {
    let mut group = c.benchmark_group("critical_points");
    let t = 1f64.exp();
    for (d, fam, _) in honeycombs(4).into_iter().skip(1) {
        let f = fam.instantiate_normalized(t).unwrap();
        group.bench_with_input(BenchmarkId::new("direct", d), &f, |b, f| {
            b.iter(|| critical_points_direct(black_box(f)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("tracked", d), &f, |b, f| {
            b.iter(|| critical_points_tracked(black_box(f), &SolverOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let grid = [5f64.exp(), 10f64.exp(), 20f64.exp()];
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("verify_theorem");
    for name in ["square", "conic"] {
        let fam = families::by_name(name).unwrap();
        group.bench_function(name, |b| b.iter(|| verify_theorem(black_box(&fam), &grid, &opts).unwrap()));
    }
    group.finish();
}

fn main() {
    let mut c = Criterion::default()
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
        .configure_from_args();
    subdivision(&mut c);
    synthesis(&mut c);
    critical_points(&mut c);
    verification(&mut c);
    c.final_summary();
}
