//! Finite-N Hermite machinery for the weight `e^{−Nx²/2}`: monic
//! polynomials, Cauchy transforms, the W/F kernels, the exact characteristic
//! function of the spectral-averaged curvature and the finite-N density.

mod asymptotics;
mod cauchy;

pub use asymptotics::{asymptotics_bulk, asymptotics_edge, BulkAsymptotics, EdgeAsymptotics};
pub use cauchy::cauchy_transform;

use crate::airy::airy_eval;
use crate::bulk::semicircle_density;
use crate::error::{Error, Result};
use crate::fourier::{invert_char_fn, CharSamples};
use crate::grid::DistributionGrid;
use crate::numerics::{ScaledComplex, ScaledReal};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteContext {
    pub n_dim: usize,
}

impl HermiteContext {
    pub fn new(n_dim: usize) -> Result<Self> {
        if n_dim < 2 {
            return Err(Error::DomainError {
                what: "n_dim must be >= 2",
                value: n_dim as f64,
            });
        }
        Ok(HermiteContext { n_dim })
    }

    pub fn n(&self) -> f64 {
        self.n_dim as f64
    }

    /// `p_0(x) .. p_kmax(x)` from `p_{k+1} = x p_k − (k/N) p_{k−1}`, run on
    /// a float pair with a shared binary exponent.
    pub fn polynomials(&self, kmax: usize, x: f64) -> Vec<ScaledReal> {
        let n = self.n();
        let mut out = Vec::with_capacity(kmax + 1);
        out.push(ScaledReal::ONE);
        if kmax == 0 {
            return out;
        }
        let (mut a, mut b, mut e) = (1.0f64, x, 0i64);
        out.push(ScaledReal::from_f64(x));
        for k in 1..kmax {
            let next = x * b - (k as f64 / n) * a;
            a = b;
            b = next;
            let m = a.abs().max(b.abs());
            if m > 2f64.powi(300) || (m < 2f64.powi(-300) && m > 0.0) {
                let shift = m.log2().floor() as i32;
                a *= 2f64.powi(-shift);
                b *= 2f64.powi(-shift);
                e += shift as i64;
            }
            out.push(ScaledReal::from_exp2(b, e));
        }
        out
    }
}

/// Monic `p_k(x)`.
pub fn monic_hermite(k: usize, ctx: &HermiteContext, x: f64) -> ScaledReal {
    ctx.polynomials(k, x)[k]
}

/// `p_k′(x) = k p_{k−1}(x)`.
pub fn monic_hermite_deriv(k: usize, ctx: &HermiteContext, x: f64) -> ScaledReal {
    if k == 0 {
        return ScaledReal::ZERO;
    }
    ctx.polynomials(k - 1, x)[k - 1].mul_f64(k as f64)
}

/// `c_k² = k!/N^k · √(2π/N)`, built as a product so consecutive ratios are `k/N`.
pub fn hermite_norm_sq(k: usize, ctx: &HermiteContext) -> ScaledReal {
    let n = ctx.n();
    let mut acc = ScaledReal::from_f64((2.0 * PI / n).sqrt());
    for j in 1..=k {
        acc = acc.mul_f64(j as f64 / n);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSet {
    pub w1: ScaledReal,
    pub w2: ScaledReal,
    pub f1: ScaledComplex,
    pub f2: ScaledComplex,
    pub at_mu: f64,
    pub at_eps: Complex64,
}

/// Everything at a fixed μ that does not depend on ε.
#[derive(Debug, Clone)]
pub struct FiniteKernels {
    pub ctx: HermiteContext,
    pub mu: f64,
    /// `p_{N−3}, p_{N−2}, p_{N−1}, p_N` at μ (`p_{N−3}` is zero when N = 2).
    pub p: [ScaledReal; 4],
    pub w1: ScaledReal,
    pub w2: ScaledReal,
    pub norm_last: ScaledReal,
}

impl FiniteKernels {
    pub fn new(mu: f64, ctx: &HermiteContext) -> Self {
        let nd = ctx.n_dim;
        let n = ctx.n();
        let all = ctx.polynomials(nd, mu);
        let p3 = if nd >= 3 {
            all[nd - 3]
        } else {
            ScaledReal::ZERO
        };
        let p = [p3, all[nd - 2], all[nd - 1], all[nd]];
        // W1 = p_N′ p_{N−1} − p_N p_{N−1}′
        let w1 = (p[2] * p[2]).mul_f64(n) - (p[3] * p[1]).mul_f64(n - 1.0);
        // W2 = p_N″ p_{N−1} − p_N p_{N−1}″
        let w2 =
            (p[1] * p[2]).mul_f64(n * (n - 1.0)) - (p[3] * p[0]).mul_f64((n - 1.0) * (n - 2.0));
        FiniteKernels {
            ctx: *ctx,
            mu,
            p,
            w1,
            w2,
            norm_last: hermite_norm_sq(nd - 1, ctx),
        }
    }

    pub fn kernel_set(&self, eps: Complex64) -> Result<KernelSet> {
        if eps.im == 0.0 {
            return Err(Error::RealAxisError);
        }
        let nd = self.ctx.n_dim;
        let n = self.ctx.n();
        let hn = cauchy_transform(0, &self.ctx, eps)?;
        let hm = cauchy_transform(-1, &self.ctx, eps)?;
        let p = &self.p;
        let f1 = hn.scale(p[2]) - hm.scale(p[3]);
        let f2 = hn.scale(p[1].mul_f64(n - 1.0)) - hm.scale(p[2].mul_f64(n));
        debug_assert!(nd >= 2);
        Ok(KernelSet {
            w1: self.w1,
            w2: self.w2,
            f1,
            f2,
            at_mu: self.mu,
            at_eps: eps,
        })
    }

    /// `F̃(μ, ε)` with `F̃_{1,2} = (2πi/c²_{N−1}) F_{1,2}`.
    pub fn f_tilde(&self, eps: Complex64) -> Result<Complex64> {
        let k = self.kernel_set(eps)?;
        let d = eps - self.mu;
        let ratio = k.w2.ratio(k.w1) / 2.0;
        let pref = ScaledComplex::new(Complex64::new(0.0, 2.0 * PI))
            .scale(ScaledReal::ONE / self.norm_last);
        let f1 = (k.f1 * pref).to_complex();
        let f2 = (k.f2 * pref).to_complex();
        Ok(f1 * (Complex64::new(1.0, 0.0) - d * ratio) + d * f2)
    }

    pub fn density(&self) -> f64 {
        let n = self.ctx.n();
        let w = ScaledReal::from_log(1, -n * self.mu * self.mu / 2.0);
        (w * self.w1 / self.norm_last).to_f64() / n
    }
}

/// How the ε offset is scaled when forming the characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteScaling {
    /// `ε = μ + iωy/N`, `y = 1/(πρ(μ))`; variable `c_bulk`.
    Bulk,
    /// `ε = μ + iω/N^{2/3}` with the factor `e^{iωN^{1/3}}`; variable `c_sc`.
    Edge,
}

impl FiniteScaling {
    /// Bulk inside `|μ| < 2 − N^{−1/3}`, soft edge otherwise.
    pub fn auto(mu: f64, ctx: &HermiteContext) -> Self {
        if mu.abs() < 2.0 - ctx.n().powf(-1.0 / 3.0) {
            FiniteScaling::Bulk
        } else {
            FiniteScaling::Edge
        }
    }
}

/// `K(ω) = ∫P(c,μ)e^{−iωc}dc` at finite N, with the scaling picked by
/// [`FiniteScaling::auto`].
pub fn char_fn_finite(omega: f64, mu: f64, ctx: &HermiteContext) -> Result<Complex64> {
    let fk = FiniteKernels::new(mu, ctx);
    char_fn_finite_with(&fk, omega, FiniteScaling::auto(mu, ctx))
}

pub fn char_fn_finite_with(
    fk: &FiniteKernels,
    omega: f64,
    scaling: FiniteScaling,
) -> Result<Complex64> {
    if omega == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = fk.ctx.n();
    match scaling {
        FiniteScaling::Bulk => {
            let rho = semicircle_density(fk.mu);
            if rho <= 0.0 {
                return Err(Error::DomainError {
                    what: "bulk scaling needs |mu| < 2",
                    value: fk.mu,
                });
            }
            let y = 1.0 / (PI * rho);
            fk.f_tilde(Complex64::new(fk.mu, omega * y / n))
        }
        FiniteScaling::Edge => {
            let k = fk.f_tilde(Complex64::new(fk.mu, omega / n.powf(2.0 / 3.0)))?;
            Ok(k * Complex64::from_polar(1.0, omega * n.cbrt()))
        }
    }
}

/// `ρ_N(μ) = e^{−Nμ²/2} W₁(μ,μ) / (N c²_{N−1})`, normalized to 1.
pub fn density_finite(mu: f64, ctx: &HermiteContext) -> f64 {
    FiniteKernels::new(mu, ctx).density()
}

/// Inversion of [`char_fn_finite_with`] on `[lo, hi]`. The ω grid (step 0.05)
/// grows until `|K| < 1e−12` or ω reaches 400.
pub fn invert_finite_char_fn(
    mu: f64,
    ctx: &HermiteContext,
    scaling: FiniteScaling,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<DistributionGrid> {
    let fk = FiniteKernels::new(mu, ctx);
    let step = 0.05;
    let mut half = vec![Complex64::new(1.0, 0.0)];
    let mut j = 1usize;
    loop {
        let w = j as f64 * step;
        let k = char_fn_finite_with(&fk, w, scaling)?;
        half.push(k);
        if (k.norm() < 1e-12 && w >= 5.0) || w >= 400.0 {
            break;
        }
        j += 1;
    }
    let samples =
        CharSamples::from_fn(j as f64 * step, step, |w| half[(w / step).round() as usize]);
    let convention = match scaling {
        FiniteScaling::Bulk => "c_bulk",
        FiniteScaling::Edge => "c_sc",
    };
    invert_char_fn(&samples, lo, hi, points, convention)
}

/// Soft-edge position `μ = 2 + ζ N^{−2/3}`.
pub fn edge_point(zeta: f64, ctx: &HermiteContext) -> f64 {
    2.0 + zeta * ctx.n().powf(-2.0 / 3.0)
}

/// `ỹ = 1/(πρ̃(ζ))`.
pub fn edge_y(zeta: f64) -> Result<f64> {
    Ok(1.0 / (PI * airy_eval(zeta)?.rho()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        let ctx = HermiteContext::new(10).unwrap();
        assert_eq!(monic_hermite(0, &ctx, 0.3).to_f64(), 1.0);
        assert_eq!(monic_hermite(1, &ctx, 0.7).to_f64(), 0.7);
        let p2 = monic_hermite(2, &ctx, 0.7).to_f64();
        assert!((p2 - (0.49 - 0.1)).abs() < 1e-15);
    }

    #[test]
    fn norm_values() {
        let ctx = HermiteContext::new(10).unwrap();
        assert!((hermite_norm_sq(0, &ctx).to_f64() - 0.792665).abs() < 1e-6);
        let ctx = HermiteContext::new(100).unwrap();
        let c = hermite_norm_sq(100, &ctx);
        assert!(c.log_mag().is_finite() && !c.is_zero());
        let r = hermite_norm_sq(37, &ctx).ratio(hermite_norm_sq(36, &ctx));
        assert!((r - 0.37).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_n() {
        assert!(HermiteContext::new(1).is_err());
    }
}
