use std::hint::black_box;

use abeltrace::corpus::{random_cycle, random_function};
use abeltrace::gcd::gcd;
use abeltrace::{
    abel_inverse_from_cycle, abelian_basis, parse_poly, pi_map, trace_form_coeffs, Cycle, MeroFunc,
};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cases(n: usize, d: usize, poles: bool) -> (Cycle, MeroFunc) {
    let mut rng = ChaCha8Rng::seed_from_u64(5 + d as u64);
    let v = random_cycle(&mut rng, n, d);
    let h = random_function(&mut rng, &v, poles);
    (v, h)
}

fn polynomial_gcd(c: &mut Criterion) {
    let g = parse_poly("x1*y - a1*b1 + 3", 1).unwrap();
    let p = &g * &parse_poly("y^3 + a1^2*x1 - b1", 1).unwrap();
    let q = &g * &parse_poly("x1^2*y + b1^2 - 2*a1", 1).unwrap();
    c.bench_function("gcd/4 variables", |b| {
        b.iter(|| gcd(black_box(&p), black_box(&q)))
    });
}

fn trace_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace");
    for (n, d) in [(1, 3), (1, 4), (2, 3)] {
        let (v, h) = cases(n, d, n == 1);
        group.bench_function(format!("pi_map n={n} d={d}"), |b| {
            b.iter(|| pi_map(black_box(&v)))
        });
        group.bench_function(format!("w_k n={n} d={d}"), |b| {
            b.iter(|| trace_form_coeffs(black_box(&v), black_box(&h), 2 * d - 1))
        });
    }
    group.finish();
}

fn abel_inverse(c: &mut Criterion) {
    let mut group = c.benchmark_group("abel_inverse");
    group.sample_size(10);
    for (n, d) in [(1, 3), (1, 4), (2, 2)] {
        let (v, h) = cases(n, d, n == 1);
        group.bench_function(format!("n={n} d={d}"), |b| {
            b.iter(|| abel_inverse_from_cycle(black_box(&v), black_box(&h)))
        });
    }
    group.finish();
}

fn abelian(c: &mut Criterion) {
    let f = parse_poly("y^5 + x1^5 - 1", 1).unwrap();
    c.bench_function("abelian_basis/fermat 5", |b| {
        b.iter(|| abelian_basis(black_box(&f), 1))
    });
}

criterion_group!(
    benches,
    polynomial_gcd,
    trace_pipeline,
    abel_inverse,
    abelian
);
criterion_main!(benches);
