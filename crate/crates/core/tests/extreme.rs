use curvelab_core::extreme::{
    charfn_extreme_direct, empirical_charfn, truncated_moments, truncated_op_basis, zn_full_line,
    zn_truncated,
};
use curvelab_core::hermite::{hermite_norm_sq, HermiteContext};
use proptest::prelude::*;

/// `∫_λ^{λ+L} x^j e^{−N x²/2} dx` by composite Simpson.
fn moment(j: i32, n: f64, lambda: f64) -> f64 {
    let (a, b, steps) = (lambda, lambda.max(0.0) + 14.0 / n.sqrt(), 20000);
    let h = (b - a) / steps as f64;
    let f = |x: f64| x.powi(j) * (-0.5 * n * x * x).exp();
    let mut s = f(a) + f(b);
    for i in 1..steps {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn moments_match_quadrature() {
    for (n, l) in [(4usize, -1.0), (10, 0.0), (10, 0.7)] {
        let m = truncated_moments(6, n, l).unwrap();
        for j in 0..=6 {
            let want = moment(j as i32, n as f64, l);
            assert!(
                (m.moments[j].to_f64() - want).abs() <= 1e-10 * want.abs().max(1e-3),
                "n={n} l={l} j={j}"
            );
        }
    }
    assert!(truncated_moments(41, 4, 0.0).is_err());
    assert!(truncated_moments(4, 4, f64::NAN).is_err());
}

#[test]
fn partition_function_small_n() {
    for l in [-1.0, 0.0, 0.5] {
        let z2 = zn_truncated(2, l).unwrap().to_f64();
        let m0 = moment(0, 2.0, l);
        assert!((z2 / m0 - 1.0).abs() < 1e-10);
        let z3 = zn_truncated(3, l).unwrap().to_f64();
        let (m0, m1, m2) = (moment(0, 3.0, l), moment(1, 3.0, l), moment(2, 3.0, l));
        let want = 2.0 * (m0 * m2 - m1 * m1);
        assert!((z3 / want - 1.0).abs() < 1e-9, "l={l}");
    }
}

#[test]
fn deep_cut_recovers_hermite() {
    let n = 10;
    let basis = truncated_op_basis(12, n, -8.0).unwrap();
    let ctx = HermiteContext::new(n).unwrap();
    for k in 0..=12 {
        assert!(basis.a[k].abs() < 1e-8);
        if k > 0 {
            assert!((basis.b[k] - k as f64 / n as f64).abs() < 1e-8);
        }
        assert!((basis.norms[k].ratio(hermite_norm_sq(k, &ctx)) - 1.0).abs() < 1e-8);
    }
    let z = zn_truncated(n, -8.0).unwrap();
    assert!((z.ratio(zn_full_line(n).unwrap()) - 1.0).abs() < 1e-8);
}

#[test]
fn zeros_lie_above_cut() {
    for l in [-3.0, 0.0, 1.0] {
        let basis = truncated_op_basis(12, 10, l).unwrap();
        assert!(basis.orthogonality_residual <= 1e-8);
        let mut prev: Vec<f64> = Vec::new();
        for k in 1..=8 {
            let z = basis.zeros(k).unwrap();
            assert!(z.iter().all(|&x| x > l), "l={l} k={k}");
            // interlacing with degree k − 1
            for (i, p) in prev.iter().enumerate() {
                assert!(z[i] < *p && *p < z[i + 1]);
            }
            for &x in &z {
                let v = basis.eval(x)[k];
                let scale = basis.norms[k].to_f64().sqrt().max(1e-300);
                assert!(v.abs() / scale < 1e-6, "l={l} k={k}");
            }
            prev = z;
        }
    }
    assert!(truncated_op_basis(16, 10, 0.0).is_err());
}

#[test]
fn direct_charfn_basics() {
    for n in [2, 3] {
        assert_eq!(charfn_extreme_direct(0.0, n).unwrap().re, 1.0);
        let k = charfn_extreme_direct(1.0, n).unwrap();
        let m = charfn_extreme_direct(-1.0, n).unwrap();
        assert!(k.norm() < 1.0);
        assert!((k - m.conj()).norm() < 1e-10);
    }
    assert!(charfn_extreme_direct(1.0, 4).is_err());
}

#[test]
fn empirical_charfn_of_point_mass() {
    let k = empirical_charfn(&[-0.5; 10], 2.0);
    assert!((k.re - 1f64.cos()).abs() < 1e-15 && (k.im - 1f64.sin()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn recurrence_coefficients_positive(l in -4.0f64..1.5, n in 2usize..30) {
        let basis = truncated_op_basis(8, n, l).unwrap();
        prop_assert!(basis.b[1..].iter().all(|&b| b > 0.0));
        prop_assert!(basis.a.iter().all(|&a| a > l));
    }
}
