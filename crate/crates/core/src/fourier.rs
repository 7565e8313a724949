//! Trapezoid inversion of characteristic functions `K(ω) = ∫P(c)e^{−iωc}dc`.

use crate::error::{Error, Result};
use crate::grid::DistributionGrid;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct CharSamples {
    /// Uniform, symmetric about 0, ascending.
    pub omega: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl CharSamples {
    /// Sample `k` on `ω = j·step`, `|ω| ≤ omega_max`. Only ω ≥ 0 is evaluated;
    /// the negative half is filled in by conjugation.
    pub fn from_fn<F: FnMut(f64) -> Complex64>(omega_max: f64, step: f64, mut k: F) -> Self {
        let m = (omega_max / step).round() as usize;
        let half: Vec<Complex64> = (0..=m).map(|j| k(j as f64 * step)).collect();
        let mut omega = Vec::with_capacity(2 * m + 1);
        let mut values = Vec::with_capacity(2 * m + 1);
        for j in (1..=m).rev() {
            omega.push(-(j as f64) * step);
            values.push(half[j].conj());
        }
        for (j, v) in half.into_iter().enumerate() {
            omega.push(j as f64 * step);
            values.push(v);
        }
        CharSamples { omega, values }
    }
}

/// Real density on `points` nodes of `[lo, hi]`.
pub fn invert_char_fn(
    samples: &CharSamples,
    lo: f64,
    hi: f64,
    points: usize,
    convention: &str,
) -> Result<DistributionGrid> {
    let n = samples.omega.len();
    if n < 3 || n % 2 == 0 || samples.values.len() != n {
        return Err(Error::AsymmetricGrid);
    }
    let mid = n / 2;
    let step = samples.omega[mid + 1] - samples.omega[mid];
    for j in 0..n {
        let want = (j as f64 - mid as f64) * step;
        if (samples.omega[j] - want).abs() > 1e-9 * step.max(1.0) {
            return Err(Error::AsymmetricGrid);
        }
    }
    let scale = samples
        .values
        .iter()
        .map(|v| v.norm())
        .fold(1e-300, f64::max);
    let mut worst = 0.0f64;
    for j in 0..=mid {
        let d = (samples.values[mid + j] - samples.values[mid - j].conj()).norm();
        worst = worst.max(d / scale);
    }
    if worst > 1e-9 {
        return Err(Error::NonHermitianSamples(worst));
    }
    // P(c) = (1/π) Σ_{ω≥0} w_j Re[K(ω_j) e^{iω_j c}], trapezoid weight ½ at ω = 0
    let abscissa = DistributionGrid::uniform(lo, hi, points);
    let last = n - 1;
    let density = abscissa
        .iter()
        .map(|&c| {
            let mut acc = 0.5 * samples.values[mid].re;
            for j in mid + 1..=last {
                let w = if j == last { 0.5 } else { 1.0 };
                let e = Complex64::from_polar(1.0, samples.omega[j] * c);
                acc += w * (samples.values[j] * e).re;
            }
            acc * step / PI
        })
        .collect();
    Ok(DistributionGrid::from_values(
        abscissa, density, 0.0, convention,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_self_transform() {
        let s = CharSamples::from_fn(40.0, 0.05, |w| Complex64::new((-0.5 * w * w).exp(), 0.0));
        let g = invert_char_fn(&s, -6.0, 6.0, 121, "x").unwrap();
        let err = g.sup_diff(|x| (-0.5 * x * x).exp() / (2.0 * PI).sqrt());
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn rejects_asymmetric() {
        let s = CharSamples {
            omega: vec![-1.0, 0.0, 2.0],
            values: vec![Complex64::new(1.0, 0.0); 3],
        };
        assert_eq!(
            invert_char_fn(&s, -1.0, 1.0, 16, "x"),
            Err(Error::AsymmetricGrid)
        );
    }
}
