//! Characteristic-function route at the soft edge.

use super::EdgeProfile;
use crate::contour::phase;
use crate::error::{Error, Result};
use crate::fourier::{invert_char_fn, CharSamples};
use crate::grid::DistributionGrid;
use crate::numerics::quad::{integrate_breaks, QuadSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

fn spec() -> QuadSpec {
    QuadSpec::new(1e-14, 1e-12, 4000)
}

/// `∫_0^∞ e^{i(τζ+τ³/3)} e^{−wτ} (1, iτ) dτ` for w ≥ 0: along the real axis to
/// the saddle `√|ζ|` (if ζ < 0), then out along arg τ = π/6.
fn oscillatory_part(zeta: f64, w: f64) -> Result<[Complex64; 2]> {
    let a = (-zeta).max(0.0).sqrt();
    let f = |t: Complex64| {
        let e = (phase(zeta, t) - t * w).exp();
        [e, Complex64::i() * t * e]
    };
    let mut out = [Complex64::new(0.0, 0.0); 2];
    if a > 0.0 {
        let n = (a * (1.0 + w)).ceil().max(2.0) as usize;
        let breaks: Vec<f64> = (0..=n).map(|j| a * j as f64 / n as f64).collect();
        let (v, _) = integrate_breaks(|x: f64| f(Complex64::new(x, 0.0)), &breaks, &spec())?;
        out = v;
    }
    let dir = Complex64::from_polar(1.0, PI / 6.0);
    let origin = Complex64::new(a, 0.0);
    let mut len = 0.5;
    while (phase(zeta, origin + dir * len) - (origin + dir * len) * w).re > -48.0 && len < 80.0 {
        len += 0.25;
    }
    let mut breaks = vec![0.0];
    let mut x = 0.125;
    while x < len {
        breaks.push(x);
        x *= 2.0;
    }
    breaks.push(len);
    let (v, _) = integrate_breaks(
        |r: f64| {
            let t = origin + dir * r;
            f(t).map(|z| z * dir)
        },
        &breaks,
        &spec(),
    )?;
    out[0] += v[0];
    out[1] += v[1];
    Ok(out)
}

/// `∫_0^∞ e^{τζ−τ³/3} e^{iωτ} (1, τ) dτ`.
fn growing_part(zeta: f64, omega: f64) -> Result<[Complex64; 2]> {
    let peak = zeta.max(0.0).sqrt();
    let shift = peak * zeta - peak.powi(3) / 3.0;
    let mut end = peak + 1.0;
    while end * zeta - end.powi(3) / 3.0 - shift > -48.0 {
        end += 0.5;
    }
    let n = ((end * (1.0 + omega.abs())) / 2.0).ceil().max(4.0) as usize;
    let breaks: Vec<f64> = (0..=n).map(|j| end * j as f64 / n as f64).collect();
    let (v, _) = integrate_breaks(
        |t: f64| {
            let e = Complex64::from_polar((t * zeta - t.powi(3) / 3.0 - shift).exp(), omega * t);
            [e, e * t]
        },
        &breaks,
        &spec(),
    )?;
    let s = shift.exp();
    Ok([v[0] * s, v[1] * s])
}

/// `(α, ∂ζα)` at ω ≠ 0.
pub fn alpha_pair(zeta: f64, omega: f64) -> Result<(Complex64, Complex64)> {
    if omega == 0.0 {
        return Err(Error::SingularInput("alpha needs omega != 0"));
    }
    crate::airy::check_domain(zeta)?;
    let s = omega.signum();
    let mut osc = oscillatory_part(zeta, omega.abs())?;
    if s < 0.0 {
        osc = osc.map(|z| z.conj());
    }
    let grow = growing_part(zeta, omega)?;
    let is = Complex64::new(0.0, s);
    Ok((osc[0] + is * grow[0], osc[1] + is * grow[1]))
}

pub fn alpha_fn(zeta: f64, omega: f64) -> Result<Complex64> {
    Ok(alpha_pair(zeta, omega)?.0)
}

/// `K(ω) = ∫P(c,ζ) e^{−iωc} dc` from the Φ/Ψ bracket, normalized to K(0) = 1.
pub fn char_fn_edge(omega: f64, zeta: f64) -> Result<Complex64> {
    let prof = EdgeProfile::new(zeta)?;
    char_fn_with(&prof, omega)
}

pub(crate) fn char_fn_with(prof: &EdgeProfile, omega: f64) -> Result<Complex64> {
    if omega == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let a = &prof.airy;
    let (al, alp) = alpha_pair(a.at, omega)?;
    let phi = al * a.ai_prime - alp * a.ai;
    let psi = al * a.ai_second() - alp * a.ai_prime;
    let s = omega.signum();
    let bracket = phi * s + Complex64::i() * omega.abs() * (psi - phi * prof.rho_ratio);
    // s·Φ → −i as ω → 0
    Ok(Complex64::i() * bracket)
}

/// Density from trapezoid inversion of `char_fn_edge` over `|ω| ≤ omega_max`.
pub fn invert_edge_char_fn(
    zeta: f64,
    lo: f64,
    hi: f64,
    points: usize,
    omega_max: f64,
    step: f64,
) -> Result<DistributionGrid> {
    let prof = EdgeProfile::new(zeta)?;
    let mut fail = None;
    let samples = CharSamples::from_fn(omega_max, step, |w| match char_fn_with(&prof, w) {
        Ok(v) => v,
        Err(e) => {
            fail = Some(e);
            Complex64::new(0.0, 0.0)
        }
    });
    if let Some(e) = fail {
        return Err(e);
    }
    invert_char_fn(&samples, lo, hi, points, "c_sc")
}
