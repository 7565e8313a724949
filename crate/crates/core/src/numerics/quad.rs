//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Self {
        assert!(abs_tol > 0.0 && rel_tol >= 0.0 && max_subdivisions > 0);
        QuadSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        }
    }

    pub fn tight() -> Self {
        QuadSpec::new(1e-13, 1e-12, 4000)
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec::new(1e-11, 1e-11, 2000)
    }
}

/// Values that can be integrated: reals, complex numbers and fixed arrays of either.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, o: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(&self) -> f64;
    fn sub(self, o: Self) -> Self {
        self.add(o.scale(-1.0))
    }
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
}

impl<T: QuadValue, const K: usize> QuadValue for [T; K] {
    fn zero() -> Self {
        [T::zero(); K]
    }
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for (a, b) in out.iter_mut().zip(o) {
            *a = a.add(b);
        }
        out
    }
    fn scale(self, s: f64) -> Self {
        self.map(|v| v.scale(s))
    }
    fn magnitude(&self) -> f64 {
        self.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel: (estimate, error estimate).
pub fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc.scale(WGK[7]);
    let mut resg = fc.scale(WG[3]);
    let mut vals = [T::zero(); 15];
    vals[7] = fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        vals[j] = f1;
        vals[14 - j] = f2;
        let s = f1.add(f2);
        resk = resk.add(s.scale(WGK[j]));
        if j % 2 == 1 {
            resg = resg.add(s.scale(WG[j / 2]));
        }
    }
    let mean = resk.scale(0.5);
    let mut resasc = WGK[7] * fc.sub(mean).magnitude();
    for j in 0..7 {
        resasc += WGK[j] * (vals[j].sub(mean).magnitude() + vals[14 - j].sub(mean).magnitude());
    }
    resasc *= h.abs();
    let est = resk.scale(h);
    let mut err = resk.sub(resg).scale(h).magnitude();
    if resasc > 0.0 && err > 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    (est, err)
}

struct Panel<T> {
    a: f64,
    b: f64,
    est: T,
    err: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err && self.a == o.a
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err
            .total_cmp(&o.err)
            .then_with(|| o.a.total_cmp(&self.a))
    }
}

/// Adaptive integral over a list of breakpoints, returning `(estimate, error)`.
pub fn integrate_breaks<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<(T, f64)> {
    let mut heap = BinaryHeap::new();
    let mut run_est = T::zero();
    let mut run_err = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (est, err) = gk15(&mut f, w[0], w[1]);
            run_est = run_est.add(est);
            run_err += err;
            heap.push(Panel {
                a: w[0],
                b: w[1],
                est,
                err,
            });
        }
    }
    let mut splits = 0usize;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * run_est.magnitude());
        if run_err <= target {
            let (total, err) = sum_panels(&heap);
            if err <= spec.abs_tol.max(spec.rel_tol * total.magnitude()) {
                return Ok((total, err));
            }
            run_est = total;
            run_err = err;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok((T::zero(), 0.0)),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if splits >= spec.max_subdivisions || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let (total, err) = sum_panels(&heap);
            return Err(Error::NonConvergence {
                estimate: total.magnitude(),
                error: err,
                subdivisions: splits,
            });
        }
        splits += 1;
        run_est = run_est.sub(worst.est);
        run_err -= worst.err;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (est, err) = gk15(&mut f, lo, hi);
            run_est = run_est.add(est);
            run_err += err;
            heap.push(Panel {
                a: lo,
                b: hi,
                est,
                err,
            });
        }
        if splits % 64 == 0 {
            let (t, e) = sum_panels(&heap);
            run_est = t;
            run_err = e;
        }
    }
}

fn sum_panels<T: QuadValue>(heap: &BinaryHeap<Panel<T>>) -> (T, f64) {
    // sum in left-endpoint order so the result does not depend on heap layout
    let mut panels: Vec<&Panel<T>> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut total = T::zero();
    let mut err = 0.0;
    for p in panels {
        total = total.add(p.est);
        err += p.err;
    }
    (total, err)
}

/// Generic adaptive integral on `[a, b]`.
pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<T> {
    integrate_breaks(f, &[a, b], spec).map(|r| r.0)
}

pub fn quad_finite<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64> {
    assert!(a < b, "quad_finite needs a < b");
    integrate(f, a, b, spec)
}

/// `∫_0^∞ f`, via the map `x = t/(1-t)` after checking that `x|f(x)|` dies out.
pub fn quad_semi_infinite<F: FnMut(f64) -> f64>(f: F, spec: &QuadSpec) -> Result<f64> {
    integrate_semi_infinite(f, 0.0, spec)
}

pub fn integrate_semi_infinite<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    spec: &QuadSpec,
) -> Result<T> {
    let mut prev = f64::INFINITY;
    let mut tail = Vec::new();
    for k in 40..=60 {
        let x = a + 2f64.powi(k);
        let env = x * f(x).magnitude();
        if !env.is_finite() {
            return Err(Error::TailBoundFailure);
        }
        tail.push(env);
    }
    for &e in &tail {
        if e > prev * (1.0 + 1e-12) && e > 1e-300 {
            return Err(Error::TailBoundFailure);
        }
        prev = e;
    }
    if tail[0] > spec.abs_tol.max(1e-10) {
        return Err(Error::TailBoundFailure);
    }
    integrate(
        |t: f64| {
            let s = 1.0 - t;
            let v = f(a + t / s);
            v.scale(1.0 / (s * s))
        },
        0.0,
        1.0,
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let s = QuadSpec::tight();
        let v = quad_finite(|x| x * x, 0.0, 1.0, &s).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn semi_infinite_examples() {
        let s = QuadSpec::tight();
        assert!((quad_semi_infinite(|x| (-x).exp(), &s).unwrap() - 1.0).abs() < 1e-12);
        let v = quad_semi_infinite(|x| 1.0 / (1.0 + x * x), &s).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
        assert_eq!(
            quad_semi_infinite(|_| 1.0, &s),
            Err(Error::TailBoundFailure)
        );
        assert_eq!(
            quad_semi_infinite(|x| 1.0 / (1.0 + x), &s),
            Err(Error::TailBoundFailure)
        );
    }

    #[test]
    fn nonconvergence_reported() {
        let s = QuadSpec::new(1e-14, 0.0, 5);
        let r = quad_finite(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, &s);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
