use criterion::{black_box, criterion_group, criterion_main, Criterion};

use zetarep::exactnum::bernoulli;
use zetarep::identities::{lookup as identity, sweep_default};
use zetarep::laurent::{closed_form_series, oracle_series, FunctionKind};
use zetarep::mellin::{integrate, lookup as representation, QuadratureConfig};
use zetarep::precision::parse_rational;
use zetarep::{specfun, PrecisionContext};

fn special_values(c: &mut Criterion) {
    let ctx = PrecisionContext::new(50).unwrap();
    c.bench_function("zeta(7/2) at 50 digits", |b| {
        let s = ctx.float(3.5);
        b.iter(|| specfun::zeta(black_box(&s), &ctx).unwrap())
    });
    c.bench_function("S_H(3) at 30 digits", |b| {
        let ctx = PrecisionContext::new(30).unwrap();
        let m = ctx.float(3);
        b.iter(|| specfun::euler_sum_h(black_box(&m), &ctx).unwrap())
    });
    c.bench_function("bernoulli(200)", |b| b.iter(|| bernoulli(black_box(200))));
}

fn series(c: &mut Criterion) {
    let ctx = PrecisionContext::new(30).unwrap();
    c.bench_function("coth4 closed form through x^40", |b| {
        b.iter(|| closed_form_series(FunctionKind::Coth4, black_box(40), &ctx).unwrap())
    });
    c.bench_function("coth4 oracle through x^40", |b| {
        b.iter(|| oracle_series(FunctionKind::Coth4, black_box(40)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let spec = identity("I31").unwrap();
    c.bench_function("I31 sweep n = 1..100", |b| b.iter(|| sweep_default(spec, None).unwrap()));
}

fn quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate");
    group.sample_size(10);
    let s = parse_rational("1/2").unwrap();
    for digits in [30, 50] {
        let cfg = QuadratureConfig::new(PrecisionContext::new(digits).unwrap());
        let rep = representation("R8").unwrap();
        group.bench_function(format!("R8 at s = 1/2, {digits} digits"), |b| {
            b.iter(|| integrate(rep, black_box(&s), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, special_values, series, sweeps, quadrature);
criterion_main!(benches);
