//! Line integrals of `e^{i(τζ+τ³/3)} g(τ)` along deformed Airy contours.
//!
//! Every contour used here is symmetric under `τ → −conj(τ)`, so for the
//! integrands we need (`g(−τ̄) = conj g(τ)`) the full integral is `2 Re` of the
//! right half. Only the right half is integrated.

use crate::error::Result;
use crate::numerics::quad::{integrate_breaks, QuadSpec, QuadValue};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Below this ζ the contour through the two real saddles is used.
pub const SADDLE_SPLIT: f64 = -2.0;

const DECAY_LOG: f64 = -48.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Path {
    /// Ray at angle π/6 from the apex `i·h` (mirror ray at 5π/6).
    Apex { h: f64 },
    /// `−id → a−id → a`, then the ray at π/6 from `a = √|ζ|`.
    Saddles { a: f64, d: f64 },
}

impl Path {
    /// Default pole-free path for ζ.
    pub fn for_zeta(zeta: f64) -> Path {
        if zeta <= SADDLE_SPLIT {
            Path::Saddles {
                a: (-zeta).sqrt(),
                d: 5.0,
            }
        } else {
            Path::Apex {
                h: zeta.max(0.0).sqrt(),
            }
        }
    }

    /// Path for an integrand with a pole at `i·p` (p real), kept at least
    /// 0.5 (apex) or 1.5 (saddle floor) away from it.
    pub fn avoiding(zeta: f64, p: f64) -> Path {
        match Path::for_zeta(zeta) {
            Path::Apex { h } => {
                if (p - h).abs() >= 0.5 {
                    Path::Apex { h }
                } else if p - 0.5 >= 0.0 && p - 0.5 >= h - 1.0 {
                    Path::Apex { h: p - 0.5 }
                } else {
                    Path::Apex { h: p + 0.5 }
                }
            }
            Path::Saddles { a, .. } => Path::Saddles {
                a,
                d: if p < 0.0 { 5f64.max(-p + 1.5) } else { 5.0 },
            },
        }
    }
}

#[inline]
pub fn phase(zeta: f64, tau: Complex64) -> Complex64 {
    Complex64::i() * (tau * zeta + tau * tau * tau / 3.0)
}

/// Radius beyond which `Re φ − shift` stays below the decay threshold.
fn ray_length(zeta: f64, origin: Complex64, shift: f64) -> f64 {
    let dir = Complex64::from_polar(1.0, PI / 6.0);
    let mut r = 0.5;
    loop {
        let v = phase(zeta, origin + dir * r).re - shift;
        if v < DECAY_LOG - 2.0 * r.max(1.0).ln() || r > 80.0 {
            return r;
        }
        r += 0.25;
    }
}

fn geometric_breaks(len: f64, first: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = first.min(len);
    while x < len {
        b.push(x);
        x *= 2.0;
    }
    b.push(len);
    b
}

/// `(log_scale, value)` with `∫_right e^{φ} g dτ = e^{log_scale} · value`.
pub fn right_half<const K: usize, G>(
    zeta: f64,
    path: Path,
    g: G,
    spec: &QuadSpec,
) -> Result<(f64, [Complex64; K])>
where
    G: Fn(Complex64) -> [Complex64; K],
{
    let dir = Complex64::from_polar(1.0, PI / 6.0);
    match path {
        Path::Apex { h } => {
            let apex = Complex64::new(0.0, h);
            let shift = phase(zeta, apex).re;
            let len = ray_length(zeta, apex, shift);
            let width = 1.0 / (1.0 + h).sqrt();
            let f = |r: f64| {
                let tau = apex + dir * r;
                let w = (phase(zeta, tau) - shift).exp() * dir;
                g(tau).map(|v| v * w)
            };
            let (v, _) = integrate_breaks(f, &geometric_breaks(len, 0.25 * width), spec)?;
            Ok((shift, v))
        }
        Path::Saddles { a, d } => {
            let floor = |x: f64| {
                let tau = Complex64::new(x, -d);
                let w = phase(zeta, tau).exp();
                g(tau).map(|v| v * w)
            };
            let wall = |s: f64| {
                let tau = Complex64::new(a, -s);
                let w = phase(zeta, tau).exp() * Complex64::i();
                g(tau).map(|v| v * w)
            };
            let origin = Complex64::new(a, 0.0);
            let len = ray_length(zeta, origin, 0.0);
            let ray = |r: f64| {
                let tau = origin + dir * r;
                let w = phase(zeta, tau).exp() * dir;
                g(tau).map(|v| v * w)
            };
            let (v1, _) = integrate_breaks(floor, &[0.0, a], spec)?;
            let (v2, _) = integrate_breaks(wall, &[0.0, 0.5 * d, d], spec)?;
            let width = 1.0 / (1.0 + a).sqrt();
            let (v3, _) = integrate_breaks(ray, &geometric_breaks(len, 0.25 * width), spec)?;
            Ok((0.0, v1.add(v2).add(v3)))
        }
    }
}

/// `(1/2π)∮ e^φ g` for symmetric integrands: `(1/π) Re` of the right half.
pub fn symmetric_integral<const K: usize, G>(
    zeta: f64,
    path: Path,
    g: G,
    spec: &QuadSpec,
) -> Result<[f64; K]>
where
    G: Fn(Complex64) -> [Complex64; K],
{
    let (shift, v) = right_half(zeta, path, g, spec)?;
    let s = shift.exp() / PI;
    Ok(v.map(|z| z.re * s))
}

pub fn contour_spec() -> QuadSpec {
    QuadSpec::new(1e-15, 1e-13, 3000)
}
