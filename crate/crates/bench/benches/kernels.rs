use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use weincalc_core::arith::rational;
use weincalc_core::combinatorics::{moment_sum_bruteforce, moment_sum_closed};
use weincalc_core::montecarlo::{mc_ball_moment, mc_cpn_average};
use weincalc_core::morphism::{blowup_weinstein, cpn_weinstein};
use weincalc_core::symbolic::PolyQ;

fn moment_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("moment_sum");
    for k in [3, 5, 7] {
        group.bench_with_input(BenchmarkId::new("bruteforce", k), &k, |b, &k| {
            b.iter(|| moment_sum_bruteforce(black_box(k), k).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed", k), &k, |b, &k| {
            b.iter(|| moment_sum_closed(black_box(k), k).unwrap())
        });
    }
    group.finish();
}

fn morphism(c: &mut Criterion) {
    c.bench_function("cpn_weinstein n=8 k=5", |b| {
        b.iter(|| cpn_weinstein(black_box(8), 5).unwrap())
    });
    c.bench_function("blowup_weinstein n=8 k=5", |b| {
        b.iter(|| blowup_weinstein(black_box(8), 5).unwrap())
    });
}

fn poly_gcd(c: &mut Criterion) {
    // (1 - x^24) and (1 - x^18) share 1 - x^6
    let a = PolyQ::one_minus_power(24).scale(&rational(3, 7));
    let b = PolyQ::one_minus_power(18).scale(&rational(-5, 2));
    c.bench_function("poly gcd deg 24/18", |bench| {
        bench.iter(|| black_box(&a).gcd(black_box(&b)))
    });
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    group.bench_function("ball moment n=3 10^5", |b| {
        b.iter(|| mc_ball_moment(3, 2, 2, 1.0, 100_000, black_box(1)).unwrap())
    });
    group.bench_function("cpn average n=3 10^5", |b| {
        b.iter(|| mc_cpn_average(3, 2, 100_000, black_box(1)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, moment_sums, morphism, poly_gcd, monte_carlo);
criterion_main!(benches);
