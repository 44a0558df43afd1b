use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use lsa_bench::{corpus, flat_pair, fraction_pairs};
use lsa_core::calculus::identity_suite;
use lsa_core::hessian::{hessian_double, hessian_metric};
use lsa_core::presymplectic::{check_presymplectic, PreSymplectic};
use lsa_core::{FlatConnection, Vars};

fn scalars(c: &mut Criterion) {
    let pairs = fraction_pairs(32);
    let mut g = c.benchmark_group("scalar");
    g.bench_function("mul", |b| {
        b.iter(|| pairs.iter().map(|(x, y)| x * y).collect::<Vec<_>>())
    });
    g.bench_function("add", |b| {
        b.iter(|| pairs.iter().map(|(x, y)| x + y).collect::<Vec<_>>())
    });
    g.bench_function("product rule", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|(x, y)| (x * y).derive(0))
                .collect::<Vec<_>>()
        })
    });
    g.finish();
}

fn structures(c: &mut Criterion) {
    let algs = corpus(10);
    let mut g = c.benchmark_group("algebroid");
    g.sample_size(10);
    g.bench_function("left symmetry x10", |b| {
        b.iter(|| {
            algs.iter()
                .filter(|a| a.check_left_symmetric().passed())
                .count()
        })
    });
    g.bench_function("identity suite x10, 5 trials", |b| {
        b.iter(|| {
            algs.iter()
                .filter(|a| identity_suite(a, 5, 0).passed())
                .count()
        })
    });
    g.finish();
}

fn doubles(c: &mut Criterion) {
    let pair = flat_pair();
    let mut g = c.benchmark_group("double");
    g.sample_size(10);
    g.bench_function("T∇ℝ² presymplectic, 5 trials", |b| {
        b.iter_batched(
            || PreSymplectic::double_unchecked(&pair),
            |e| check_presymplectic(&e, 5, 0),
            BatchSize::SmallInput,
        )
    });
    let vars = Vars::coordinates(2);
    let conn = FlatConnection::coordinate(vars.clone());
    let g2 = hessian_metric(&vars.parse("x1^2*x2/2").unwrap(), &vars).unwrap();
    g.bench_function("hessian pipeline x1^2*x2/2", |b| {
        b.iter(|| hessian_double(&conn, &g2, 5, 0).unwrap())
    });
    g.finish();
}

criterion_group!(benches, scalars, structures, doubles);
criterion_main!(benches);
