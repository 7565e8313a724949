use curvelab_core::airy::soft_edge_density;
use curvelab_core::hermite::{
    asymptotics_bulk, asymptotics_edge, cauchy_transform, char_fn_finite, char_fn_finite_with,
    density_finite, edge_point, hermite_norm_sq, monic_hermite, monic_hermite_deriv, FiniteKernels,
    FiniteScaling, HermiteContext,
};
use curvelab_core::{Complex64, Error};
use proptest::prelude::*;
use std::f64::consts::PI;

fn ctx(n: usize) -> HermiteContext {
    HermiteContext::new(n).unwrap()
}

/// Monic Hermite polynomials for the weight e^{−N x²/2}, by the three-term
/// recurrence in plain floats (small N only).
fn plain_hermite(k: usize, n: f64, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if k == 0 {
        return 1.0;
    }
    for j in 1..k {
        let c = x * b - j as f64 / n * a;
        a = b;
        b = c;
    }
    b
}

fn simpson(a: f64, b: f64, n: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn norms() {
    let c = ctx(10);
    assert!((hermite_norm_sq(0, &c).to_f64() - (2.0 * PI / 10.0).sqrt()).abs() < 1e-12);
    for k in 1..30 {
        let r = hermite_norm_sq(k, &c).ratio(hermite_norm_sq(k - 1, &c));
        assert!((r - k as f64 / 10.0).abs() < 1e-13);
    }
    let big = hermite_norm_sq(100, &ctx(100));
    assert!(big.log_mag().is_finite() && big.sign() > 0);
}

#[test]
fn polynomials_match_plain_recurrence() {
    let c = ctx(12);
    for k in [0, 1, 2, 5, 11] {
        for x in [-1.7, -0.2, 0.0, 0.9, 2.4] {
            let p = monic_hermite(k, &c, x).to_f64();
            let q = plain_hermite(k, 12.0, x);
            assert!((p - q).abs() <= 1e-12 * q.abs().max(1.0), "k={k} x={x}");
        }
    }
}

#[test]
fn derivative_identity() {
    for n in [20usize, 300] {
        let c = ctx(n);
        for x in [-1.0, 0.3, 1.9, 2.2] {
            let d = monic_hermite_deriv(n, &c, x);
            let p = monic_hermite(n - 1, &c, x).mul_f64(n as f64);
            assert!((d.ratio(p) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn orthogonality_by_quadrature() {
    let n = 10.0;
    let mut worst = 0.0f64;
    let norm = |k: usize| hermite_norm_sq(k, &ctx(10)).to_f64().sqrt();
    for j in 0..=12 {
        for k in 0..j {
            let v = simpson(-8.0, 8.0, 8000, |x| {
                plain_hermite(j, n, x) * plain_hermite(k, n, x) * (-n * x * x / 2.0).exp()
            });
            worst = worst.max(v.abs() / (norm(j) * norm(k)));
        }
    }
    assert!(worst <= 1e-10, "{worst:e}");
}

#[test]
fn cauchy_transform_examples() {
    // far from the axis h_k(z) ≈ −c_k²/(2πi z^{k+1})
    let c = ctx(20);
    let z = Complex64::new(30.0, 40.0);
    for (off, k) in [(-20i64, 0i32), (-19, 1)] {
        let h = cauchy_transform(off, &c, z).unwrap().to_complex();
        let lead =
            -hermite_norm_sq(k as usize, &c).to_f64() / (2.0 * PI * Complex64::i() * z.powi(k + 1));
        assert!((h / lead - 1.0).norm() <= 1e-3, "k={k}");
    }
    assert!(matches!(
        cauchy_transform(0, &c, Complex64::new(0.5, 0.0)),
        Err(Error::RealAxisError)
    ));
    assert!(cauchy_transform(-21, &c, z).is_err());
}

#[test]
fn cauchy_reflection() {
    let c = ctx(15);
    for z in [
        Complex64::new(0.3, 0.2),
        Complex64::new(-1.5, 0.01),
        Complex64::new(3.0, -2.0),
    ] {
        for off in [-2i64, -1, 0, 1] {
            let a = cauchy_transform(off, &c, z).unwrap().to_complex();
            let b = cauchy_transform(off, &c, z.conj()).unwrap().to_complex();
            assert!(
                (b + a.conj()).norm() <= 1e-10 * a.norm().max(1e-300),
                "off={off} z={z}"
            );
        }
    }
}

#[test]
fn cauchy_matches_direct_quadrature() {
    // h_k(z) = (2πi)⁻¹ ∫ p_k(x) e^{−N x²/2}/(x − z) dx, k = N
    let n = 10usize;
    let c = ctx(n);
    let z = Complex64::new(0.4, 0.3);
    let steps = 40000;
    let (a, b) = (-8.0, 8.0);
    let h = (b - a) / steps as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=steps {
        let x = a + i as f64 * h;
        let w = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += plain_hermite(n, n as f64, x) * (-(n as f64) * x * x / 2.0).exp()
            / (Complex64::new(x, 0.0) - z)
            * w;
    }
    let direct = acc * (h / 3.0) / (2.0 * PI * Complex64::i());
    let got = cauchy_transform(0, &c, z).unwrap().to_complex();
    assert!(
        (got - direct).norm() <= 1e-8 * direct.norm(),
        "{got} vs {direct}"
    );
}

#[test]
fn plemelj_jump() {
    let (n, x, eps) = (10usize, 0.5, 1e-6);
    let c = ctx(n);
    for off in [-7i64, -1, 0] {
        let k = (n as i64 + off) as usize;
        let up = cauchy_transform(off, &c, Complex64::new(x, eps))
            .unwrap()
            .to_complex();
        let down = cauchy_transform(off, &c, Complex64::new(x, -eps))
            .unwrap()
            .to_complex();
        let want = plain_hermite(k, n as f64, x) * (-(n as f64) * x * x / 2.0).exp();
        assert!(
            ((up - down).re - want).abs() <= 1e-4 * want.abs().max(1e-3),
            "k={k}"
        );
        assert!((up - down).im.abs() <= 1e-8);
    }
}

#[test]
fn w1_positive() {
    let c = ctx(50);
    for mu in [-1.5, 0.0, 1.5] {
        let fk = FiniteKernels::new(mu, &c);
        assert!(fk.w1.sign() > 0);
    }
}

#[test]
fn bulk_ratio() {
    let c = ctx(400);
    let mu: f64 = 0.3;
    let k = FiniteKernels::new(mu, &c)
        .kernel_set(Complex64::new(mu, 0.5 / 400.0))
        .unwrap();
    let rho = (4.0 - mu * mu).sqrt() / (2.0 * PI);
    let want = Complex64::new(mu / 2.0, -PI * rho) * 400.0;
    assert!((k.f2.ratio(k.f1) / want - 1.0).norm() <= 0.05);
}

#[test]
fn density_examples() {
    let c = ctx(50);
    let total = simpson(-3.5, 3.5, 7000, |x| density_finite(x, &c));
    assert!((total - 1.0).abs() <= 1e-8, "{total}");
    let c = ctx(400);
    assert!((density_finite(0.0, &c) - 1.0 / PI).abs() <= 0.01);
    let edge = 400f64.cbrt() * density_finite(edge_point(0.0, &c), &c);
    let rho = soft_edge_density(0.0).unwrap();
    assert!((edge - rho).abs() <= 0.05 * rho);
}

#[test]
fn char_fn_at_origin() {
    for n in [50usize, 100, 200] {
        let k = char_fn_finite(0.0, 0.0, &ctx(n)).unwrap();
        assert!((k - 1.0).norm() <= 1e-8);
        let k = char_fn_finite(1e-9, 0.5, &ctx(n)).unwrap();
        assert!((k - 1.0).norm() <= 1e-8);
    }
}

#[test]
fn asymptotic_examples() {
    let c = ctx(400);
    let b = asymptotics_bulk(0.4, 1.0, &c).unwrap();
    assert!(b.err_p_n <= 0.03 && b.err_w1 <= 0.03);
    assert!(asymptotics_bulk(0.4, 1.0, &ctx(100)).unwrap().err_f1 > b.err_f1);
    let e = asymptotics_edge(0.0, 1.0, &c).unwrap();
    assert!(e.err_w1 <= 0.10);
    assert!(e.f2_over_nf1 <= 0.10);
    assert!(matches!(
        asymptotics_bulk(1.99, 1.0, &c),
        Err(Error::EdgeProximity(_))
    ));
    assert!(asymptotics_edge(9.0, 1.0, &c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bulk_char_fn_bounded_and_hermitian(w in 0.05f64..20.0, mu in -1.6f64..1.6, n in 20usize..120) {
        let c = ctx(n);
        let fk = FiniteKernels::new(mu, &c);
        let k = char_fn_finite_with(&fk, w, FiniteScaling::Bulk).unwrap();
        prop_assert!(k.norm() <= 1.0 + 1e-9);
        let m = char_fn_finite_with(&fk, -w, FiniteScaling::Bulk).unwrap();
        prop_assert!((m - k.conj()).norm() <= 1e-10);
    }

    #[test]
    fn edge_char_fn_bounded(w in 0.05f64..20.0, z in -3.0f64..3.0, n in 50usize..200) {
        let c = ctx(n);
        let fk = FiniteKernels::new(edge_point(z, &c), &c);
        let k = char_fn_finite_with(&fk, w, FiniteScaling::Edge).unwrap();
        prop_assert!(k.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn density_nonnegative(x in -3.0f64..3.0, n in 2usize..150) {
        prop_assert!(density_finite(x, &ctx(n)) >= 0.0);
    }
}
