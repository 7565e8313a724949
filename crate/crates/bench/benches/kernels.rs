use criterion::{black_box, criterion_group, criterion_main, Criterion};
use curvelab_bench::{small_campaign, ZETAS};
use curvelab_core::airy::airy_eval;
use curvelab_core::edge::{beta_fn, char_fn_edge, pdf_edge};
use curvelab_core::extreme::{charfn_extreme_direct, truncated_op_basis};
use curvelab_core::hermite::{char_fn_finite, HermiteContext};
use curvelab_core::mc::{curvatures, run_campaign};

fn analytic(c: &mut Criterion) {
    c.bench_function("airy_eval", |b| {
        b.iter(|| airy_eval(black_box(-3.7)).unwrap())
    });
    c.bench_function("beta_fn", |b| {
        b.iter(|| beta_fn(black_box(1.3), black_box(0.4)).unwrap())
    });
    c.bench_function("pdf_edge", |b| {
        b.iter(|| {
            ZETAS
                .iter()
                .map(|&z| pdf_edge(black_box(2.0), z).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("char_fn_edge", |b| {
        b.iter(|| char_fn_edge(black_box(1.5), black_box(0.0)).unwrap())
    });
}

fn finite(c: &mut Criterion) {
    let ctx = HermiteContext::new(200).unwrap();
    c.bench_function("char_fn_finite_n200", |b| {
        b.iter(|| char_fn_finite(black_box(2.0), black_box(0.3), &ctx).unwrap())
    });
    c.bench_function("truncated_basis_k12", |b| {
        b.iter(|| truncated_op_basis(12, 10, black_box(0.0)).unwrap())
    });
    c.bench_function("extreme_direct_n3", |b| {
        b.iter(|| charfn_extreme_direct(black_box(1.0), 3).unwrap())
    });
}

fn monte_carlo(c: &mut Criterion) {
    let cfg = small_campaign(50, 20);
    let mut g = c.benchmark_group("campaign");
    g.sample_size(10);
    g.bench_function("n50_x20", |b| {
        b.iter(|| run_campaign(&cfg, |t| curvatures(t.sample, t.w)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, analytic, finite, monte_carlo);
criterion_main!(benches);
