//! Large-N approximations of the polynomials, kernels and Cauchy transforms,
//! in the bulk (`x = 2cos φ`) and at the soft edge (`x = 2 + ζN^{−2/3}`), with
//! their errors against the exact finite-N values.
//!
//! The Cauchy-transform sign follows `h_k = (2πi)⁻¹∫p_k w/(x−z)`, so `F₁`,
//! `F₂` and `f_N` carry the opposite overall sign to the usual leading forms
//! written for `−h_k`.

use super::{cauchy_transform, edge_point, edge_y, FiniteKernels, HermiteContext};
use crate::airy::airy_eval;
use crate::edge::alpha_pair;
use crate::error::{Error, Result};
use crate::numerics::{ScaledComplex, ScaledReal};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkAsymptotics {
    pub p_n: ScaledReal,
    /// `√(2/sin φ) e^{N cos2φ/2}`, the size of the `p_N` oscillation.
    pub envelope: ScaledReal,
    pub w1: ScaledReal,
    pub f1: ScaledComplex,
    pub f2: ScaledComplex,
    /// Errors against the exact values. `p_N` is measured relative to the
    /// envelope, `F₁` by modulus, the rest plainly relative.
    pub err_p_n: f64,
    pub err_w1: f64,
    pub err_f1: f64,
    pub err_f2: f64,
}

pub fn asymptotics_bulk(mu: f64, omega: f64, ctx: &HermiteContext) -> Result<BulkAsymptotics> {
    let n = ctx.n_dim as f64;
    let margin = 2.0 - n.powf(-1.0 / 3.0);
    if mu.abs() >= margin {
        return Err(Error::EdgeProximity(mu));
    }
    if omega == 0.0 {
        return Err(Error::RealAxisError);
    }
    let phi = (mu / 2.0).acos();
    let theta = phi - (2.0 * phi).sin() / 2.0;
    let sin = phi.sin();
    let c2 = (2.0 * phi).cos();
    let rho = sin / PI;
    let y = 1.0 / (PI * rho);
    let s = omega.signum();

    let envelope = ScaledReal::from_log(1, n * c2 / 2.0).mul_f64((2.0 / sin).sqrt());
    let p_n = envelope.mul_f64((phi / 2.0 - PI / 4.0 + n * theta).cos());
    let w1 = ScaledReal::from_log(1, n * c2).mul_f64(2.0 * n * sin);
    let f1 = ScaledComplex::from_parts(
        -n,
        Complex64::new(0.0, -1.0)
            * Complex64::new(-PI * rho * omega.abs() * y, -omega * mu * y / 2.0).exp(),
    );
    let f2 = f1.mul_c(Complex64::new(mu / 2.0, -s * PI * rho) * n);

    let fk = FiniteKernels::new(mu, ctx);
    let k = fk.kernel_set(Complex64::new(mu, omega * y / n))?;
    let err_p_n = (fk.p[3] - p_n).abs().ratio(envelope);
    let err_w1 = ((w1 - fk.w1) / fk.w1).to_f64().abs();
    let err_f1 = (f1.norm().ratio(k.f1.norm()) - 1.0).abs();
    let err_f2 = (f2 - k.f2).norm().ratio(k.f2.norm());
    Ok(BulkAsymptotics {
        p_n,
        envelope,
        w1,
        f1,
        f2,
        err_p_n,
        err_w1,
        err_f1,
        err_f2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeAsymptotics {
    pub p_n: ScaledReal,
    pub p_nm1: ScaledReal,
    pub f_n: ScaledComplex,
    pub w1: ScaledReal,
    pub f1: ScaledComplex,
    pub f2: ScaledComplex,
    /// `N + N^{2/3} ρ̃′/(2ρ̃)`
    pub w2_over_2w1: f64,
    pub err_p_n: f64,
    pub err_p_nm1: f64,
    pub err_f_n: f64,
    pub err_w1: f64,
    pub err_f1: f64,
    pub err_f2: f64,
    /// Relative error of the `N^{2/3}` correction in `W₂/(2W₁)`.
    pub err_ratio_correction: f64,
    /// `|F₂/(N F₁) − 1|` from the exact kernels.
    pub f2_over_nf1: f64,
}

pub fn asymptotics_edge(zeta: f64, omega: f64, ctx: &HermiteContext) -> Result<EdgeAsymptotics> {
    if zeta.abs() > 8.0 {
        return Err(Error::DomainError {
            what: "edge asymptotics need |zeta| <= 8",
            value: zeta,
        });
    }
    if omega == 0.0 {
        return Err(Error::RealAxisError);
    }
    let n = ctx.n_dim as f64;
    let n3 = n.cbrt();
    let a = airy_eval(zeta)?;
    let yt = edge_y(zeta)?;
    let s = omega.signum();
    let x = edge_point(zeta, ctx);

    // A_N e^{N^{1/3}ζ}
    let an = ScaledReal::from_log(
        1,
        0.5 * (2.0 * PI).ln() + n.ln() / 6.0 + n / 2.0 + n3 * zeta,
    );
    let p_n = an.mul_f64(a.ai);
    let p_nm1 = an.mul_f64(a.ai + a.ai_prime / n3);
    let w1 = ScaledReal::from_log(1, n + 2.0 * n3 * zeta)
        .mul_f64(2.0 * PI * n.powf(2.0 / 3.0) * a.rho());

    let (al, alp) = alpha_pair(zeta, omega * yt)?;
    // B_N e^{−N^{1/3}ζ}, B_N = −N^{1/6}e^{−3N/2}/√(2π)
    let bn = ScaledReal::from_log(
        1,
        n.ln() / 6.0 - 1.5 * n - 0.5 * (2.0 * PI).ln() - n3 * zeta,
    );
    let osc = Complex64::from_polar(1.0, -n3 * omega * yt);
    let f_n = ScaledComplex::from_real(bn).mul_c(osc * al * s);
    let bracket = a.ai * alp - a.ai_prime * al;
    let corr = a.ai_second() * al - alp * a.ai_prime;
    let en = ScaledReal::from_log(1, -n);
    let f1 = ScaledComplex::from_real(en).mul_c(-osc * s * bracket);
    let f2 = ScaledComplex::from_real(en).mul_c(-osc * s * (bracket + corr / n3) * n);
    let w2_over_2w1 = n + n.powf(2.0 / 3.0) * a.rho_ratio();

    let fk = FiniteKernels::new(x, ctx);
    let eps = Complex64::new(x, omega * yt / n.powf(2.0 / 3.0));
    let k = fk.kernel_set(eps)?;
    let hn = cauchy_transform(0, ctx, eps)?;
    let rel_r = |approx: ScaledReal, exact: ScaledReal| ((approx - exact) / exact).to_f64().abs();
    let rel_c =
        |approx: ScaledComplex, exact: ScaledComplex| (approx - exact).norm().ratio(exact.norm());
    let exact_ratio = fk.w2.ratio(fk.w1) / 2.0;
    let corr_exact = (exact_ratio - n) / n.powf(2.0 / 3.0);
    Ok(EdgeAsymptotics {
        p_n,
        p_nm1,
        f_n,
        w1,
        f1,
        f2,
        w2_over_2w1,
        err_p_n: rel_r(p_n, fk.p[3]),
        err_p_nm1: rel_r(p_nm1, fk.p[2]),
        err_f_n: rel_c(f_n, hn),
        err_w1: rel_r(w1, fk.w1),
        err_f1: rel_c(f1, k.f1),
        err_f2: rel_c(f2, k.f2),
        err_ratio_correction: (corr_exact / a.rho_ratio() - 1.0).abs(),
        f2_over_nf1: (k.f2.ratio(k.f1) / n - 1.0).norm(),
    })
}
