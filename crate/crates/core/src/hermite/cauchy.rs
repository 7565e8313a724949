//! `h_k(z) = (2πi)⁻¹ ∫ p_k(x) e^{−Nx²/2} dx/(x − z)` for `Im z ≠ 0`.
//!
//! For `Im z > 0` this equals `(−i)^k √(N/2π) ∫_0^∞ q^k e^{−Nq²/2 + iNzq} dq`.
//! The q-integral is taken along the segment from 0 to the saddle of the
//! integrand and then along a ray leaving the saddle downhill, with the
//! saddle value factored out so nothing over- or underflows.

use super::HermiteContext;
use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_breaks, QuadSpec};
use crate::numerics::ScaledComplex;
use num_complex::Complex64;
use std::f64::consts::PI;

fn spec() -> QuadSpec {
    QuadSpec::new(1e-15, 1e-12, 4000)
}

/// `h_{N+n_offset}(z)`.
pub fn cauchy_transform(
    n_offset: i64,
    ctx: &HermiteContext,
    z: Complex64,
) -> Result<ScaledComplex> {
    let k = ctx.n_dim as i64 + n_offset;
    if k < 0 {
        return Err(Error::DomainError {
            what: "polynomial degree must be >= 0",
            value: k as f64,
        });
    }
    cauchy_k(k as u64, ctx.n_dim as f64, z)
}

pub(crate) fn cauchy_k(k: u64, n: f64, z: Complex64) -> Result<ScaledComplex> {
    if z.im == 0.0 || !z.im.is_finite() {
        return Err(Error::RealAxisError);
    }
    if z.im < 0.0 {
        // h(z̄) = −conj h(z)
        return Ok(-cauchy_k(k, n, z.conj())?.conj());
    }
    if z.re < 0.0 {
        // h(z) = (−1)^k conj h(−z̄)
        let v = cauchy_k(k, n, -z.conj())?.conj();
        return Ok(if k % 2 == 1 { -v } else { v });
    }
    upper_right(k, n, z)
}

fn upper_right(k: u64, n: f64, z: Complex64) -> Result<ScaledComplex> {
    let m = k as f64;
    let iz = Complex64::i() * z;
    let g = |q: Complex64| -> Complex64 {
        let base = -n * q * q / 2.0 + iz * n * q;
        if k == 0 {
            base
        } else {
            base + m * q.ln()
        }
    };
    // g′ = 0  ⇔  q² − izq − k/N = 0
    let disc = (Complex64::new(4.0 * m / n, 0.0) - z * z).sqrt();
    let mut qs = (iz + disc) / 2.0;
    if qs.re < 0.0 || qs.norm() < 1e-12 {
        qs = Complex64::new(0.0, 0.0);
    }
    let (g0, origin) = if qs.norm() > 0.0 {
        (g(qs), qs)
    } else {
        (Complex64::new(0.0, 0.0), qs)
    };

    let g2 = if qs.norm() > 0.0 {
        -n - m / (qs * qs)
    } else {
        Complex64::new(-n, 0.0)
    };
    let g3 = if qs.norm() > 0.0 {
        2.0 * m / (qs * qs * qs)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let mut ang = (PI - g2.arg()) / 2.0;
    while ang > PI / 2.0 {
        ang -= PI;
    }
    while ang <= -PI / 2.0 {
        ang += PI;
    }
    let ang = ang.clamp(-PI / 6.0, PI / 6.0);
    let dir = Complex64::from_polar(1.0, ang);
    let width = {
        let a = 1.0 / g2.norm().sqrt();
        let b = if g3.norm() > 0.0 {
            (6.0 / g3.norm()).cbrt()
        } else {
            f64::INFINITY
        };
        a.min(b).min(1.0)
    };

    let rel = |q: Complex64| -> Complex64 {
        let e = g(q) - g0;
        if e.re < -745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            e.exp()
        }
    };

    let mut total = Complex64::new(0.0, 0.0);
    if qs.norm() > 0.0 {
        let w = (width / qs.norm()).min(0.5);
        let mut breaks = vec![1.0];
        let mut d = w / 4.0;
        while 1.0 - d > 0.0 {
            breaks.push(1.0 - d);
            d *= 2.0;
        }
        breaks.push(0.0);
        breaks.reverse();
        let (v, _) = integrate_breaks(|s: f64| rel(qs * s) * qs, &breaks, &spec())?;
        total += v;
    }

    let mut len = width;
    while (g(origin + dir * len) - g0).re > -50.0 && len < 1e6 {
        len *= 1.5;
    }
    let mut breaks = vec![0.0];
    let mut x = width / 8.0;
    while x < len {
        breaks.push(x);
        x *= 2.0;
    }
    breaks.push(len);
    let (v, _) = integrate_breaks(|t: f64| rel(origin + dir * t) * dir, &breaks, &spec())?;
    total += v;

    let phase = match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let front = phase * (n / (2.0 * PI)).sqrt() * Complex64::from_polar(1.0, g0.im);
    Ok(ScaledComplex::from_parts(g0.re, front * total))
}
