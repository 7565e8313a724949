//! Closed-form bulk quantities: semicircle, mean curvature, the
//! Lorentzian-squared curvature density and its characteristic function.
//!
//! Curvatures are in units of `C_typ = πρ(x)·y_typ`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkPoint {
    pub x: f64,
    /// 1/(πρ)
    pub y: f64,
    pub rho: f64,
}

impl BulkPoint {
    pub fn new(x: f64) -> Result<Self> {
        if x.abs() >= 2.0 {
            return Err(Error::DomainError {
                what: "bulk point needs |x| < 2",
                value: x,
            });
        }
        let rho = semicircle_density(x);
        Ok(BulkPoint {
            x,
            y: 1.0 / (PI * rho),
            rho,
        })
    }

    /// Peak position c₀ = x·y/2.
    pub fn c0(&self) -> f64 {
        0.5 * self.x * self.y
    }
}

pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// Semicircle CDF on [−2, 2].
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        return 0.0;
    }
    if x >= 2.0 {
        return 1.0;
    }
    0.5 + (x * (4.0 - x * x).sqrt() / 4.0 + (x / 2.0).asin()) / PI
}

/// Mean curvature in units of y_typ.
pub fn mean_curvature(x: f64) -> Result<f64> {
    let a = x.abs();
    if a == 2.0 {
        return Err(Error::BranchPointError(x));
    }
    if a < 2.0 {
        Ok(0.5 * x)
    } else {
        Ok(0.5 * (x - x.signum() * (x * x - 4.0).sqrt()))
    }
}

/// `(2/π) κ³ / ((c−c₀)² + κ²)²`
pub fn lorentzian_squared(c: f64, c0: f64, kappa: f64) -> f64 {
    let d = (c - c0) * (c - c0) + kappa * kappa;
    2.0 / PI * kappa.powi(3) / (d * d)
}

pub fn zd_pdf(c: f64, x: f64) -> Result<f64> {
    let p = BulkPoint::new(x)?;
    Ok(lorentzian_squared(c, p.c0(), 1.0))
}

/// CDF of the κ = 1 Lorentzian-squared law, closed form.
pub fn zd_cdf(c: f64, x: f64) -> Result<f64> {
    let p = BulkPoint::new(x)?;
    let u = c - p.c0();
    Ok(0.5 + (u.atan() + u / (1.0 + u * u)) / PI)
}

/// `⟨e^{−iωc}⟩` under the bulk law: `e^{−iωc₀ − |ω|}(1 + |ω|)`.
pub fn bulk_char_fn(omega: f64, x: f64) -> Result<Complex64> {
    let p = BulkPoint::new(x)?;
    let w = omega.abs();
    Ok(Complex64::from_polar(
        (-w).exp() * (1.0 + w),
        -omega * p.c0(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((semicircle_density(0.0) - 1.0 / PI).abs() < 1e-15);
        assert!((semicircle_density(1.0) - 0.275_664).abs() < 1e-6);
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(mean_curvature(1.0).unwrap(), 0.5);
        assert!((mean_curvature(3.0).unwrap() - 0.381_966).abs() < 1e-6);
        assert!(mean_curvature(-2.0).is_err());
        assert!((zd_pdf(0.0, 0.0).unwrap() - std::f64::consts::FRAC_2_PI).abs() < 1e-12);
        assert!(zd_pdf(0.0, 2.0).is_err());
        assert_eq!(bulk_char_fn(0.0, 0.3).unwrap(), Complex64::new(1.0, 0.0));
    }
}
