//! Limiting forms of the edge density for ζ → −∞ and ζ → +∞.

use super::EdgeProfile;
use crate::airy::airy_eval;
use crate::bulk::lorentzian_squared;
use crate::error::{Error, Result};
use crate::grid::DistributionGrid;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitForm {
    /// Lorentzian-squared with κ = πρ̃(ζ), centred at 0 (ζ < 0).
    BulkMatch,
    /// Normal density in c with mean −√ζ and variance 1/(2√ζ) (ζ > 0).
    Gaussian,
    /// `e^{−ζc+c³/3} θ(√ζ − c)`, the dominant pole part of β.
    PoleBeta,
}

pub fn pole_beta(c: f64, zeta: f64) -> f64 {
    if c < zeta.max(0.0).sqrt() {
        (-zeta * c + c * c * c / 3.0).exp()
    } else {
        0.0
    }
}

fn gaussian_in_c(c: f64, zeta: f64) -> f64 {
    let s = 2f64.sqrt() * zeta.powf(0.25);
    let x = (c + zeta.sqrt()) * s;
    s * (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

pub fn edge_limit_forms(
    zeta: f64,
    which: LimitForm,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<DistributionGrid> {
    match which {
        LimitForm::BulkMatch => {
            if zeta >= 0.0 {
                return Err(Error::DomainError {
                    what: "bulk_match needs zeta < 0",
                    value: zeta,
                });
            }
            let kappa = PI * airy_eval(zeta)?.rho();
            let tail = 1.0 - zd_mass(lo, hi, kappa);
            Ok(DistributionGrid::from_fn(
                lo,
                hi,
                points,
                tail,
                "c_sc",
                |c| lorentzian_squared(c, 0.0, kappa),
            ))
        }
        LimitForm::Gaussian => {
            if zeta <= 0.0 {
                return Err(Error::DomainError {
                    what: "gaussian needs zeta > 0",
                    value: zeta,
                });
            }
            Ok(DistributionGrid::from_fn(
                lo,
                hi,
                points,
                0.0,
                "c_sc",
                |c| gaussian_in_c(c, zeta),
            ))
        }
        LimitForm::PoleBeta => {
            crate::airy::check_domain(zeta)?;
            let mut g =
                DistributionGrid::from_fn(lo, hi, points, 0.0, "c_sc", |c| pole_beta(c, zeta));
            // not a density: leave the residual undefined
            g.normalization_residual = f64::NAN;
            Ok(g)
        }
    }
}

fn zd_mass(lo: f64, hi: f64, kappa: f64) -> f64 {
    let f = |c: f64| {
        let u = c / kappa;
        0.5 + (u.atan() + u / (1.0 + u * u)) / PI
    };
    f(hi) - f(lo)
}

/// `sup_{|x|≤3} |p(x) − φ(x)|` for the rescaled variable `x = (c+√ζ)√2 ζ^{1/4}`.
pub fn gaussian_rescaled_error(zeta: f64) -> Result<f64> {
    let prof = EdgeProfile::new(zeta)?;
    let s = 2f64.sqrt() * zeta.powf(0.25);
    let mut worst = 0.0f64;
    for j in 0..=120 {
        let x = -3.0 + 0.05 * j as f64;
        let c = x / s - zeta.sqrt();
        let p = prof.pdf(c)? / s;
        let g = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        worst = worst.max((p - g).abs());
    }
    Ok(worst)
}

/// Least-squares fits of the large-ζ correction coefficients:
/// `b` in `ρ̃′/(2ρ̃) ≈ −√ζ(1 + b/(16ζ^{3/2}))` and `k` in
/// `Ai ≈ Ai₀(1 − k/ζ^{3/2})`, both over ζ ∈ [20, 40].
pub fn fit_density_coefficient() -> Result<(f64, f64)> {
    let (mut num_b, mut den_b) = (0.0, 0.0);
    let (mut num_k, mut den_k) = (0.0, 0.0);
    for j in 0..=20 {
        let z: f64 = 20.0 + j as f64;
        let a = airy_eval(z)?;
        let xb = 1.0 / (16.0 * z.powf(1.5));
        let yb = -a.rho_ratio() / z.sqrt() - 1.0;
        let ai0 = (-(2.0 / 3.0) * z.powf(1.5)).exp() / (2.0 * PI.sqrt() * z.powf(0.25));
        let xk = z.powf(-1.5);
        let yk = 1.0 - a.ai / ai0;
        num_b += xb * yb;
        den_b += xb * xb;
        num_k += xk * yk;
        den_k += xk * xk;
    }
    Ok((num_b / den_b, num_k / den_k))
}
