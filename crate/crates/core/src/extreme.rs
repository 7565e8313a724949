//! Orthogonal polynomials of the truncated Gaussian measure
//! `e^{−Nx²/2} χ(x > λ_min) dx`, and direct small-N quadrature of the
//! extreme-eigenvalue characteristic function
//! `K(ω) = ⟨∏_{n≥2} (λ₁−λ_n)/(λ₁−λ_n+iω/N^{2/3})⟩` with `λ₁ = λ_min`.
//!
//! Evaluating `K` through the truncated basis needs Cauchy transforms of
//! `π_k(x; λ_min)`, which are not implemented; the direct route covers
//! N = 2 and 3.

use crate::eigh::{eigh, HermitianMatrix};
use crate::error::{Error, Result};
use crate::hermite::{hermite_norm_sq, HermiteContext};
use crate::numerics::quad::{integrate_breaks, QuadSpec};
use crate::numerics::ScaledReal;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const MAX_MOMENT: usize = 40;
pub const MAX_DEGREE: usize = 15;
pub const ORTHO_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedMeasure {
    pub n_dim: usize,
    pub lambda_min: f64,
    /// `m_j = ∫_{λmin}^∞ x^j e^{−Nx²/2} dx`
    pub moments: Vec<ScaledReal>,
}

/// `e^{−N(x² − s²)/2}` with `s = max(λ_min, 0)`, bounded by 1 on the support.
fn scaled_weight(x: f64, n: f64, s: f64) -> f64 {
    (-0.5 * n * (x * x - s * s)).exp()
}

fn weight_log_scale(n: f64, lambda_min: f64) -> f64 {
    let s = lambda_min.max(0.0);
    -0.5 * n * s * s
}

fn check_n(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::DomainError {
            what: "n_dim must be >= 1",
            value: n as f64,
        });
    }
    Ok(n as f64)
}

pub fn truncated_moments(j_max: usize, n_dim: usize, lambda_min: f64) -> Result<TruncatedMeasure> {
    if j_max > MAX_MOMENT {
        return Err(Error::DomainError {
            what: "moment order must be <= 40",
            value: j_max as f64,
        });
    }
    let n = check_n(n_dim)?;
    if !lambda_min.is_finite() {
        return Err(Error::DomainError {
            what: "lambda_min must be finite",
            value: lambda_min,
        });
    }
    let s = lambda_min.max(0.0);
    let ls = weight_log_scale(n, lambda_min);
    // everything below is in units of e^{ls}
    let edge = (-0.5 * n * (lambda_min * lambda_min - s * s)).exp();
    let (lo, hi) = support(n, lambda_min, 0);
    let (m0, _) = integrate_breaks(
        |x: f64| scaled_weight(x, n, s),
        &panels(lo, hi, 32),
        &QuadSpec::tight(),
    )?;
    let mut m = vec![m0];
    if j_max >= 1 {
        m.push(edge / n);
    }
    for j in 1..j_max {
        // m_{j+1} = λ^j e^{−Nλ²/2}/N + (j/N) m_{j−1}
        m.push(lambda_min.powi(j as i32) * edge / n + j as f64 / n * m[j - 1]);
    }
    Ok(TruncatedMeasure {
        n_dim,
        lambda_min,
        moments: m
            .into_iter()
            .map(|v| ScaledReal::from_f64(v) * ScaledReal::from_log(1, ls))
            .collect(),
    })
}

/// Interval carrying all but a negligible part of `x^{2k} e^{−Nx²/2}` on
/// `[λ_min, ∞)`.
fn support(n: f64, lambda_min: f64, k: usize) -> (f64, f64) {
    let r = 2.0 * ((k + 1) as f64 / n).sqrt() + 12.0 / n.sqrt();
    (lambda_min.max(-r), lambda_min.max(0.0) + r)
}

fn panels(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| lo + (hi - lo) * i as f64 / count as f64)
        .collect()
}

/// Monic orthogonal polynomials of the truncated measure through the
/// recurrence `π_{k+1} = (x − a_k)π_k − b_k π_{k−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedOPBasis {
    pub n_dim: usize,
    pub lambda_min: f64,
    pub a: Vec<f64>,
    /// `b_k = c_k²/c_{k−1}²`; `b[0]` is unused and set to 0.
    pub b: Vec<f64>,
    /// `c_k²`, k = 0..=k_max
    pub norms: Vec<ScaledReal>,
    /// `max_{j≠k} |⟨π_j, π_k⟩|/(c_j c_k)` from an independent quadrature.
    pub orthogonality_residual: f64,
}

impl TruncatedOPBasis {
    pub fn k_max(&self) -> usize {
        self.a.len() - 1
    }

    /// `(π_0(x), …, π_{k_max}(x))`
    pub fn eval(&self, x: f64) -> Vec<f64> {
        eval_recurrence(&self.a, &self.b, self.a.len(), x)
    }

    /// Zeros of `π_k`, as eigenvalues of the k×k Jacobi matrix.
    pub fn zeros(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 || k > self.k_max() + 1 {
            return Err(Error::DomainError {
                what: "degree outside the basis",
                value: k as f64,
            });
        }
        let j = HermitianMatrix::from_upper(k, |r, c| {
            if r == c {
                Complex64::new(self.a[r], 0.0)
            } else if c == r + 1 {
                Complex64::new(self.b[c].sqrt(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(eigh(&j)?.0)
    }
}

/// `π_0 … π_{count−1}` at x.
fn eval_recurrence(a: &[f64], b: &[f64], count: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(count);
    if count == 0 {
        return p;
    }
    p.push(1.0);
    if count > 1 {
        p.push(x - a[0]);
    }
    for k in 1..count - 1 {
        let next = (x - a[k]) * p[k] - b[k] * p[k - 1];
        p.push(next);
    }
    p
}

const GRAM: usize = (MAX_DEGREE + 1) * (MAX_DEGREE + 2) / 2;

/// Stieltjes procedure: `a_k = ⟨xπ_k,π_k⟩/⟨π_k,π_k⟩`, `b_k = c_k²/c_{k−1}²`, with
/// each inner product taken by adaptive quadrature. The first step agrees
/// with the moments: `c_0² = m_0`, `a_0 = m_1/m_0`.
pub fn truncated_op_basis(k_max: usize, n_dim: usize, lambda_min: f64) -> Result<TruncatedOPBasis> {
    if k_max > MAX_DEGREE {
        return Err(Error::DomainError {
            what: "basis degree must be <= 15",
            value: k_max as f64,
        });
    }
    let measure = truncated_moments(1, n_dim, lambda_min)?;
    let n = n_dim as f64;
    let s = lambda_min.max(0.0);
    let ls = weight_log_scale(n, lambda_min);
    let (lo, hi) = support(n, lambda_min, k_max);
    let breaks = panels(lo, hi, 48);
    let spec = QuadSpec::new(1e-300, 1e-14, 4000);

    let unit = ScaledReal::from_log(1, ls);
    let c0 = measure.moments[0].ratio(unit);
    let mut a = vec![measure.moments[1].ratio(measure.moments[0])];
    let mut b = vec![0.0];
    let mut c2 = vec![c0];
    for k in 1..=k_max {
        let (v, _) = integrate_breaks(
            |x: f64| {
                let p = eval_recurrence(&a, &b, k + 1, x);
                let w = p[k] * p[k] * scaled_weight(x, n, s);
                [w, x * w]
            },
            &breaks,
            &spec,
        )?;
        if !(v[0] > 0.0) {
            return Err(Error::IllConditioned {
                degree: k,
                residual: f64::INFINITY,
            });
        }
        a.push(v[1] / v[0]);
        b.push(v[0] / c2[k - 1]);
        c2.push(v[0]);
    }

    // Gram matrix of the normalized polynomials, upper triangle packed.
    let count = k_max + 1;
    let inv: Vec<f64> = c2.iter().map(|c| c.sqrt().recip()).collect();
    let (g, _) = integrate_breaks(
        |x: f64| {
            let p = eval_recurrence(&a, &b, count, x);
            let w = scaled_weight(x, n, s);
            let mut out = [0.0; GRAM];
            let mut idx = 0;
            for j in 0..count {
                for k in j..count {
                    out[idx] = p[j] * inv[j] * p[k] * inv[k] * w;
                    idx += 1;
                }
            }
            out
        },
        &breaks,
        &QuadSpec::new(1e-15, 1e-14, 4000),
    )?;
    let mut residual = 0.0f64;
    let mut idx = 0;
    for j in 0..count {
        for k in j..count {
            if k != j {
                residual = residual.max(g[idx].abs());
            }
            idx += 1;
        }
    }
    if residual > ORTHO_BOUND {
        return Err(Error::IllConditioned {
            degree: k_max,
            residual,
        });
    }
    Ok(TruncatedOPBasis {
        n_dim,
        lambda_min,
        a,
        b,
        norms: c2
            .into_iter()
            .map(|c| ScaledReal::from_f64(c) * unit)
            .collect(),
        orthogonality_residual: residual,
    })
}

/// `Z_{N−1}(λ_min) = (N−1)! ∏_{k=0}^{N−2} c_k(λ_min)²`.
pub fn zn_truncated(n_dim: usize, lambda_min: f64) -> Result<ScaledReal> {
    if n_dim < 2 {
        return Err(Error::DomainError {
            what: "n_dim must be >= 2",
            value: n_dim as f64,
        });
    }
    let basis = truncated_op_basis(n_dim - 2, n_dim, lambda_min)?;
    let mut z = ScaledReal::from_f64(1.0);
    for (k, c) in basis.norms.iter().enumerate() {
        z = z * *c * ScaledReal::from_f64((k + 1) as f64);
    }
    Ok(z)
}

/// Full-line `Z_{N−1}` with the Hermite norms `c_k² = k!/N^k √(2π/N)`.
pub fn zn_full_line(n_dim: usize) -> Result<ScaledReal> {
    let ctx = HermiteContext::new(n_dim)?;
    let mut z = ScaledReal::from_f64(1.0);
    for k in 0..n_dim - 1 {
        z = z * hermite_norm_sq(k, &ctx) * ScaledReal::from_f64((k + 1) as f64);
    }
    Ok(z)
}

/// `K(ω)` at N = 2 or 3 by direct quadrature over the ordered sector.
///
/// With `x = λ₁ + t` and `g(t) = t³/(t − iω/N^{2/3}) e^{−N(λ₁+t)²/2}`, the
/// integral over the other eigenvalues is `G₀` (N = 2) or `2(G₀G₂ − G₁²)`
/// (N = 3), `G_j = ∫_0^∞ x^j g dt`. The result is divided by its ω = 0 value.
pub fn charfn_extreme_direct(omega: f64, n_dim: usize) -> Result<Complex64> {
    if n_dim != 2 && n_dim != 3 {
        return Err(Error::DomainError {
            what: "direct quadrature supports N = 2 and 3",
            value: n_dim as f64,
        });
    }
    if omega == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let num = extreme_integral(omega, n_dim)?;
    let den = extreme_integral(0.0, n_dim)?;
    Ok(num / den)
}

fn extreme_integral(omega: f64, n_dim: usize) -> Result<Complex64> {
    let n = n_dim as f64;
    let delta = Complex64::new(0.0, omega / n.powf(2.0 / 3.0));
    let t_max = 14.0 / n.sqrt();
    let mut inner_breaks = vec![0.0];
    let mut t = (delta.im.abs() / 8.0).max(1e-3);
    while t < t_max {
        inner_breaks.push(t);
        t *= 2.0;
    }
    inner_breaks.push(t_max);
    let inner_spec = QuadSpec::new(1e-14, 1e-12, 2000);
    let mut failure = None;
    let outer = |l1: f64| -> Complex64 {
        let g = integrate_breaks(
            |t: f64| {
                let x = l1 + t;
                let v = Complex64::new(t * t * t, 0.0) / (Complex64::new(t, 0.0) - delta)
                    * (-0.5 * n * x * x).exp();
                [v, v * x, v * x * x]
            },
            &inner_breaks,
            &inner_spec,
        );
        let inner = match g {
            Ok((g, _)) => {
                if n_dim == 2 {
                    g[0]
                } else {
                    2.0 * (g[0] * g[2] - g[1] * g[1])
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        };
        inner * (-0.5 * n * l1 * l1).exp()
    };
    let lo = -12.0 / n.sqrt();
    let hi = 8.0 / n.sqrt();
    let (v, _) = integrate_breaks(
        outer,
        &panels(lo, hi, 24),
        &QuadSpec::new(1e-13, 1e-10, 2000),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(v)
}

/// `⟨e^{−iωc}⟩` over a sample of extreme curvatures.
pub fn empirical_charfn(samples: &[f64], omega: f64) -> Complex64 {
    let s: Complex64 = samples
        .iter()
        .map(|&c| Complex64::from_polar(1.0, -omega * c))
        .sum();
    s / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_moments() {
        let m = truncated_moments(4, 4, 0.0).unwrap();
        assert!((m.moments[1].to_f64() - 0.25).abs() < 1e-15);
        let m = truncated_moments(0, 2, 1.0).unwrap();
        assert!((m.moments[0].to_f64() - 0.139_402_792_640_331).abs() < 1e-12);
    }

    #[test]
    fn first_polynomial() {
        let b = truncated_op_basis(3, 5, 0.3).unwrap();
        let m = truncated_moments(1, 5, 0.3).unwrap();
        let x = 0.9;
        let want = x - m.moments[1].ratio(m.moments[0]);
        assert!((b.eval(x)[1] - want).abs() < 1e-14);
    }

    #[test]
    fn other_n_rejected() {
        assert!(charfn_extreme_direct(1.0, 4).is_err());
        assert_eq!(
            charfn_extreme_direct(0.0, 3).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }
}
