//! Soft-edge curvature density `P(c, ζ) = P^(I) + P^(II)` in the shifted and
//! scaled variable `c_sc`.
//!
//! β is evaluated as a contour integral of `e^{i(τζ+τ³/3)}/(c+iτ)` plus the
//! residue `e^{−cζ+c³/3}` whenever the chosen contour passes above the pole at
//! `τ = ic`. This is an exact rewrite of `cγ − ∂ζγ + δ` that never forms the
//! cancelling combination.

mod charfn;
mod limits;

pub use charfn::{alpha_fn, alpha_pair, char_fn_edge, invert_edge_char_fn};
pub use limits::{
    edge_limit_forms, fit_density_coefficient, gaussian_rescaled_error, pole_beta, LimitForm,
};

use crate::airy::{airy_eval, AiryValues};
use crate::contour::{contour_spec, symmetric_integral, Path};
use crate::error::{Error, Result};
use crate::grid::DistributionGrid;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCoordinates {
    pub zeta: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeIngredients {
    pub gamma: f64,
    pub gamma_dzeta: f64,
    pub delta: f64,
    pub beta: f64,
    pub beta_dc: f64,
    pub nu: f64,
}

/// `e^{−cζ + c³/3}`, the pole residue.
#[inline]
fn pole(c: f64, zeta: f64) -> f64 {
    (-c * zeta + c * c * c / 3.0).exp()
}

/// β, ∂cβ and ∂ζβ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaTriple {
    pub beta: f64,
    pub dc: f64,
    pub dzeta: f64,
}

pub fn beta_triple(c: f64, zeta: f64) -> Result<BetaTriple> {
    crate::airy::check_domain(zeta)?;
    let path = Path::avoiding(zeta, c);
    let v = symmetric_integral(
        zeta,
        path,
        |t: Complex64| {
            let d = Complex64::new(c, 0.0) + Complex64::i() * t;
            let r = d.inv();
            [r, -r * r, Complex64::i() * t * r]
        },
        &contour_spec(),
    )?;
    let mut out = BetaTriple {
        beta: v[0],
        dc: v[1],
        dzeta: v[2],
    };
    if let Path::Apex { h } = path {
        if c < h {
            let e = pole(c, zeta);
            out.beta += e;
            out.dc += (c * c - zeta) * e;
            out.dzeta -= c * e;
        }
    }
    Ok(out)
}

pub fn beta_fn(c: f64, zeta: f64) -> Result<f64> {
    Ok(beta_triple(c, zeta)?.beta)
}

pub fn beta_dc(c: f64, zeta: f64) -> Result<f64> {
    Ok(beta_triple(c, zeta)?.dc)
}

/// `(1/π)∫_0^∞ cos(τζ+τ³/3)/(c²+τ²) dτ` and its ζ-derivative.
pub fn gamma_pair(c: f64, zeta: f64) -> Result<(f64, f64)> {
    if c == 0.0 {
        return Err(Error::SingularInput("gamma diverges at c = 0"));
    }
    crate::airy::check_domain(zeta)?;
    let a = c.abs();
    let probe = match Path::for_zeta(zeta) {
        Path::Apex { .. } => a,
        Path::Saddles { .. } => -a,
    };
    let path = Path::avoiding(zeta, probe);
    let v = symmetric_integral(
        zeta,
        path,
        |t: Complex64| {
            let r = (t * t + a * a).inv();
            [r, Complex64::i() * t * r]
        },
        &contour_spec(),
    )?;
    let (mut g, mut gz) = (v[0], v[1]);
    match path {
        Path::Apex { h } if a < h => {
            let e = pole(a, zeta);
            g += e / (2.0 * a);
            gz -= 0.5 * e;
        }
        Path::Saddles { d, .. } if a < d => {
            let e = pole(-a, zeta);
            g += e / (2.0 * a);
            gz += 0.5 * e;
        }
        _ => {}
    }
    Ok((g, gz))
}

pub fn gamma_fn(c: f64, zeta: f64) -> Result<f64> {
    Ok(gamma_pair(c, zeta)?.0)
}

/// `θ(−c) e^{−cζ+c³/3}` with θ(0) = 0.
pub fn delta_fn(c: f64, zeta: f64) -> f64 {
    if c < 0.0 {
        pole(c, zeta)
    } else {
        0.0
    }
}

/// Airy data at one ζ, shared by every c evaluated there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeProfile {
    pub airy: AiryValues,
    pub rho: f64,
    /// ρ̃′/(2ρ̃)
    pub rho_ratio: f64,
}

impl EdgeProfile {
    pub fn new(zeta: f64) -> Result<Self> {
        let airy = airy_eval(zeta)?;
        Ok(EdgeProfile {
            airy,
            rho: airy.rho(),
            rho_ratio: airy.rho_ratio(),
        })
    }

    pub fn zeta(&self) -> f64 {
        self.airy.at
    }

    pub fn nu(&self, c: f64) -> f64 {
        let a = &self.airy;
        c * a.ai_prime + a.ai_second() - (c * a.ai + a.ai_prime) * self.rho_ratio
    }

    /// ∂cν
    pub fn nu_dc(&self) -> f64 {
        self.airy.ai_prime - self.airy.ai * self.rho_ratio
    }

    /// `(P^(I), P^(II))` at c.
    pub fn pdf_parts(&self, c: f64) -> Result<(f64, f64)> {
        let b = beta_triple(c, self.zeta())?;
        Ok(self.parts_from_beta(c, &b))
    }

    pub fn parts_from_beta(&self, c: f64, b: &BetaTriple) -> (f64, f64) {
        let a = &self.airy;
        let p1 = -b.beta * (c * a.ai + a.ai_prime) + a.ai * a.ai;
        let p2 = -(b.dc * self.nu(c) + b.beta * self.nu_dc());
        (p1, p2)
    }

    pub fn pdf(&self, c: f64) -> Result<f64> {
        let (p1, p2) = self.pdf_parts(c)?;
        Ok(p1 + p2)
    }

    pub fn tail_coefficient(&self) -> f64 {
        let a = &self.airy;
        let z = a.at;
        -2.0 * z * self.rho + 1.5 * a.ai * a.ai * a.rho_prime() / self.rho - 4.0 * a.ai * a.ai_prime
    }

    /// Large-|c| expansion coefficients: `P^(I) ~ Σ a_k/c^k`, `P^(II) ~ Σ b_k/c^k`
    /// for k = 0..=kmax (entries 0 and 1 vanish).
    pub fn tail_series(&self, kmax: usize) -> (Vec<f64>, Vec<f64>) {
        let d = self.airy.ai_derivatives(kmax + 1);
        let r = self.rho_ratio;
        let mut a = vec![0.0; kmax + 1];
        let mut b = vec![0.0; kmax + 1];
        for k in 2..=kmax {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            a[k] = sign * (d[1] * d[k - 1] - d[0] * d[k]);
            let km1 = (k - 1) as f64;
            b[k] = sign
                * km1
                * (d[2] * d[k - 2] - d[1] * d[k - 1] - r * (d[1] * d[k - 2] - d[0] * d[k - 1]));
        }
        (a, b)
    }

    /// Mass of `(P^(I), P^(II))` outside `[−l, l]` from the even tail terms.
    pub fn tail_mass(&self, l: f64) -> (f64, f64) {
        let (a, b) = self.tail_series(12);
        let mut m = (0.0, 0.0);
        for k in (2..=12).step_by(2) {
            let w = 2.0 / ((k - 1) as f64 * l.powi(k as i32 - 1));
            m.0 += a[k] * w;
            m.1 += b[k] * w;
        }
        m
    }

    /// Total mass of the density left of `−l` and right of `l`, from the
    /// tail series through `c^{-12}`.
    pub fn tail_masses(&self, l: f64) -> (f64, f64) {
        let (a, b) = self.tail_series(12);
        let (mut left, mut right) = (0.0, 0.0);
        for k in 2..=12 {
            let w = ((k - 1) as f64 * l.powi(k as i32 - 1)).recip();
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            right += (a[k] + b[k]) * w;
            left += s * (a[k] + b[k]) * w;
        }
        (left, right)
    }

    pub fn ingredients(&self, c: f64) -> Result<EdgeIngredients> {
        let zeta = self.zeta();
        let (gamma, gamma_dzeta) = gamma_pair(c, zeta)?;
        let b = beta_triple(c, zeta)?;
        Ok(EdgeIngredients {
            gamma,
            gamma_dzeta,
            delta: delta_fn(c, zeta),
            beta: b.beta,
            beta_dc: b.dc,
            nu: self.nu(c),
        })
    }

    /// Density on a uniform grid; the normalization residual includes the
    /// analytic tail mass beyond the grid.
    pub fn grid(&self, lo: f64, hi: f64, points: usize) -> Result<DistributionGrid> {
        let abscissa = DistributionGrid::uniform(lo, hi, points);
        let mut density = Vec::with_capacity(points);
        for &c in &abscissa {
            density.push(self.pdf(c)?);
        }
        let l = lo.abs().min(hi.abs());
        let tail = if l > 10.0 {
            let t = self.tail_mass(l);
            t.0 + t.1
        } else {
            0.0
        };
        Ok(DistributionGrid::from_values(
            abscissa, density, tail, "c_sc",
        ))
    }
}

pub fn nu_fn(c: f64, zeta: f64) -> Result<f64> {
    Ok(EdgeProfile::new(zeta)?.nu(c))
}

pub fn pdf_edge_i(c: f64, zeta: f64) -> Result<f64> {
    Ok(EdgeProfile::new(zeta)?.pdf_parts(c)?.0)
}

pub fn pdf_edge_ii(c: f64, zeta: f64) -> Result<f64> {
    Ok(EdgeProfile::new(zeta)?.pdf_parts(c)?.1)
}

pub fn pdf_edge(c: f64, zeta: f64) -> Result<f64> {
    EdgeProfile::new(zeta)?.pdf(c)
}

pub fn tail_coefficient(zeta: f64) -> Result<f64> {
    Ok(EdgeProfile::new(zeta)?.tail_coefficient())
}

/// `(∫P^(I), ∫P^(II))` over the real line: adaptive quadrature on
/// `[−l, l]` plus the analytic tails.
pub fn normalization(zeta: f64) -> Result<(f64, f64)> {
    let prof = EdgeProfile::new(zeta)?;
    let l = 40.0 + 2.0 * zeta.abs().sqrt();
    let mut breaks = vec![-l];
    let centre = -zeta.max(0.0).sqrt();
    for x in [-20.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 20.0] {
        breaks.push(centre + x);
    }
    breaks.push(l);
    breaks.retain(|&x| x >= -l && x <= l);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let spec = crate::numerics::QuadSpec::new(1e-12, 1e-12, 4000);
    let mut fail = None;
    let (v, _) = crate::numerics::quad::integrate_breaks(
        |c: f64| match prof.pdf_parts(c) {
            Ok((a, b)) => [a, b],
            Err(e) => {
                fail = Some(e);
                [0.0, 0.0]
            }
        },
        &breaks,
        &spec,
    )?;
    if let Some(e) = fail {
        return Err(e);
    }
    let (t1, t2) = prof.tail_mass(l);
    Ok((v[0] + t1, v[1] + t2))
}

/// `∫β(c, ζ) dc` over the real line; equals `π Bi(ζ)`. Uses
/// `β ~ Σ (−1)^k Ai^{(k)}/c^{k+1}` beyond `±l`.
pub fn beta_integral(zeta: f64) -> Result<f64> {
    let airy = airy_eval(zeta)?;
    let l = 40.0 + 2.0 * zeta.abs().sqrt();
    let mut breaks: Vec<f64> = (-8..=8).map(|j| j as f64 * l / 8.0).collect();
    breaks.extend([-2.0, -1.0, 1.0, 2.0]);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let spec = crate::numerics::QuadSpec::new(1e-12, 1e-12, 4000);
    let mut fail = None;
    let (v, _) = crate::numerics::quad::integrate_breaks(
        |c: f64| match beta_fn(c, zeta) {
            Ok(b) => b,
            Err(e) => {
                fail = Some(e);
                0.0
            }
        },
        &breaks,
        &spec,
    )?;
    if let Some(e) = fail {
        return Err(e);
    }
    let d = airy.ai_derivatives(13);
    let tail: f64 = (1..=13)
        .step_by(2)
        .map(|k| -2.0 * d[k] / (k as f64 * l.powi(k as i32)))
        .sum();
    Ok(v + tail)
}
