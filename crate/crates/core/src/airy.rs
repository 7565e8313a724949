//! Airy functions of real argument from their integral representations, and
//! the soft-edge density `ρ̃(ζ) = Ai′² − ζ Ai²`.

use crate::contour::{contour_spec, right_half, Path};
use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_breaks, QuadSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const ZETA_MIN: f64 = -40.0;
pub const ZETA_MAX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryValues {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
    pub at: f64,
}

impl AiryValues {
    pub fn ai_second(&self) -> f64 {
        self.at * self.ai
    }

    pub fn wronskian(&self) -> f64 {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }

    /// ρ̃(ζ)
    pub fn rho(&self) -> f64 {
        self.ai_prime * self.ai_prime - self.at * self.ai * self.ai
    }

    /// ρ̃′(ζ) = −Ai²
    pub fn rho_prime(&self) -> f64 {
        -self.ai * self.ai
    }

    /// ρ̃′/(2ρ̃)
    pub fn rho_ratio(&self) -> f64 {
        self.rho_prime() / (2.0 * self.rho())
    }

    /// `Ai^{(k)}(ζ)` for k = 0..=n, from `Ai^{(k+2)} = ζ Ai^{(k)} + k Ai^{(k−1)}`.
    pub fn ai_derivatives(&self, n: usize) -> Vec<f64> {
        let mut d = vec![self.ai, self.ai_prime];
        while d.len() <= n {
            let k = d.len() - 2;
            let prev = if k >= 1 { k as f64 * d[k - 1] } else { 0.0 };
            d.push(self.at * d[k] + prev);
        }
        d.truncate(n + 1);
        d
    }
}

pub fn check_domain(zeta: f64) -> Result<()> {
    if !(ZETA_MIN..=ZETA_MAX).contains(&zeta) {
        return Err(Error::DomainError {
            what: "zeta outside [-40, 40]",
            value: zeta,
        });
    }
    Ok(())
}

/// Ai, Ai′, Bi, Bi′ at ζ ∈ [−40, 40].
pub fn airy_eval(zeta: f64) -> Result<AiryValues> {
    check_domain(zeta)?;
    let spec = contour_spec();
    let path = Path::for_zeta(zeta);
    let g = |t: Complex64| [Complex64::new(1.0, 0.0), Complex64::i() * t];
    let (shift, main) = right_half(zeta, path, g, &spec)?;
    let scale = shift.exp() / PI;
    let ai = main[0].re * scale;
    let ai_prime = main[1].re * scale;
    let (bi, bi_prime) = match path {
        // the floor/wall part of the saddle path is the e^{τζ−τ³/3} piece
        Path::Saddles { .. } => (main[0].im / PI, main[1].im / PI),
        Path::Apex { .. } => {
            let (_, osc) = right_half(zeta, Path::Apex { h: 0.0 }, g, &spec)?;
            let (grow0, grow1) = growing_part(zeta, &spec)?;
            ((osc[0].im + grow0) / PI, (osc[1].im + grow1) / PI)
        }
    };
    Ok(AiryValues {
        ai,
        ai_prime,
        bi,
        bi_prime,
        at: zeta,
    })
}

/// `∫_0^∞ e^{tζ−t³/3} (1, t) dt`.
fn growing_part(zeta: f64, spec: &QuadSpec) -> Result<(f64, f64)> {
    let peak = zeta.max(0.0).sqrt();
    let shift = peak * zeta - peak.powi(3) / 3.0;
    let width = 1.0 / (1.0 + peak).sqrt();
    let mut end = peak + 1.0;
    while end * zeta - end.powi(3) / 3.0 - shift > -48.0 {
        end += 0.5;
    }
    let mut breaks = vec![0.0];
    for k in -4..=4 {
        let x = peak + k as f64 * width;
        if x > 0.0 && x < end {
            breaks.push(x);
        }
    }
    breaks.push(end);
    let (v, _) = integrate_breaks(
        |t: f64| {
            let e = (t * zeta - t.powi(3) / 3.0 - shift).exp();
            [e, t * e]
        },
        &breaks,
        spec,
    )?;
    let s = shift.exp();
    Ok((v[0] * s, v[1] * s))
}

pub fn soft_edge_density(zeta: f64) -> Result<f64> {
    Ok(airy_eval(zeta)?.rho())
}

/// Ai alone (cheaper call sites read better with this).
pub fn ai(zeta: f64) -> Result<f64> {
    Ok(airy_eval(zeta)?.ai)
}
