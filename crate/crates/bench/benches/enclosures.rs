use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lncert_bench::{ln_arguments, widths};
use lncert_core::cert::{archimedes_pi, certify_pi_e, certify_power, e_enclosure, gamma_enclosure, PowerBase};
use lncert_core::ln::{midpoint_lower, trapezoid_upper};
use lncert_core::{ln_enclosure, Policy, Rational};

fn bounds(c: &mut Criterion) {
    let (a, b) = (Rational::frac(355, 113), Rational::frac(22, 7));
    c.bench_function("trapezoid_upper", |bench| {
        bench.iter(|| trapezoid_upper(&a, &b).unwrap())
    });
    c.bench_function("midpoint_lower", |bench| bench.iter(|| midpoint_lower(&a, &b).unwrap()));
}

fn ln(c: &mut Criterion) {
    let mut g = c.benchmark_group("ln_enclosure");
    for (xn, x) in ln_arguments() {
        for (en, eps) in widths() {
            g.bench_with_input(BenchmarkId::new(xn, en), &(x.clone(), eps), |bench, (x, eps)| {
                bench.iter(|| ln_enclosure(x, eps).unwrap())
            });
        }
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let policy = Policy::default();
    let eps = Rational::ten_pow_neg(6);
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    g.bench_function("e_enclosure 1e-6", |bench| {
        bench.iter(|| e_enclosure(&eps, &policy).unwrap())
    });
    g.bench_function("power 29 30", |bench| {
        bench.iter(|| {
            certify_power(
                &PowerBase::Rational(Rational::int(29)),
                &Rational::int(30),
                &eps,
                &policy,
            )
            .unwrap()
        })
    });
    g.bench_function("pi_e", |bench| {
        bench.iter(|| certify_pi_e(&archimedes_pi(), &eps, &policy).unwrap())
    });
    g.bench_function("gamma_enclosure 100 1e-6", |bench| {
        bench.iter(|| gamma_enclosure(100, &eps, &policy).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bounds, ln, certificates);
criterion_main!(benches);
