//! Histograms and Kolmogorov–Smirnov distances.

use crate::error::{Error, Result};
use crate::grid::DistributionGrid;

pub const MIN_SAMPLES: usize = 100;

fn enough(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: n,
            need: MIN_SAMPLES,
        });
    }
    Ok(())
}

/// Density-normalized histogram on `bins` equal cells of `[lo, hi]`. The
/// abscissa holds cell centres; samples outside the range count towards the
/// total but land in no cell.
pub fn histogram(
    samples: &[f64],
    bins: usize,
    lo: f64,
    hi: f64,
    convention: &str,
) -> Result<DistributionGrid> {
    enough(samples.len())?;
    if bins == 0 || !(hi > lo) {
        return Err(Error::DomainError {
            what: "histogram needs bins > 0 and hi > lo",
            value: bins as f64,
        });
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in samples {
        if x >= lo && x < hi {
            counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
        } else if x == hi {
            counts[bins - 1] += 1;
        }
    }
    let total = samples.len() as f64;
    let abscissa: Vec<f64> = (0..bins).map(|i| lo + (i as f64 + 0.5) * width).collect();
    let density: Vec<f64> = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    let inside: u64 = counts.iter().sum();
    let mut g = DistributionGrid::from_values(abscissa, density, 0.0, convention);
    g.normalization_residual = (1.0 - inside as f64 / total).abs();
    Ok(g)
}

/// `sup_x |F_emp(x) − F(x)|`, checked on both sides of every sample.
pub fn ks_distance<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> Result<f64> {
    enough(samples.len())?;
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut worst = 0.0f64;
    let mut i = 0;
    while i < s.len() {
        let x = s[i];
        let mut j = i;
        while j < s.len() && s[j] == x {
            j += 1;
        }
        let left = x - 1e-12 * x.abs().max(1.0);
        worst = worst.max((i as f64 / n - cdf(left)).abs());
        worst = worst.max((j as f64 / n - cdf(x)).abs());
        i = j;
    }
    Ok(worst)
}

/// KS distance against a tabulated density; `lower_mass` is the model
/// probability left of the grid. The model CDF is the cumulative trapezoid
/// integral, interpolated linearly and clamped outside the grid.
pub fn ks_distance_grid(
    samples: &[f64],
    model: &DistributionGrid,
    lower_mass: f64,
    upper_mass: f64,
) -> Result<f64> {
    let cum = model.cumulative(lower_mass);
    let (lo, hi) = model.range;
    let last = cum.len() - 1;
    ks_distance(samples, |x| {
        if x < lo {
            return lower_mass * model_tail_fraction(x, lo);
        }
        if x >= hi {
            return 1.0 - upper_mass * model_tail_fraction(x, hi);
        }
        let t = (x - lo) / model.step;
        let k = (t.floor() as usize).min(last - 1);
        let f = t - k as f64;
        cum[k] * (1.0 - f) + cum[k + 1] * f
    })
}

/// Fraction of the tail mass beyond `edge` that also lies beyond `x`, for a
/// density decaying like `|c|^{-4}`.
fn model_tail_fraction(x: f64, edge: f64) -> f64 {
    if edge == 0.0 {
        return 0.0;
    }
    (edge / x).abs().powi(3).min(1.0)
}

/// Two-sample KS distance.
pub fn ecdf_ks(a: &[f64], b: &[f64]) -> Result<f64> {
    enough(a.len().min(b.len()))?;
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut worst = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        worst = worst.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(worst)
}

/// Sample mean and its standard error.
pub fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn own_step_function() {
        let s: Vec<f64> = (0..200).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut sorted = s.clone();
        sorted.sort_by(f64::total_cmp);
        let d = ks_distance(&s, |x| {
            sorted.iter().filter(|&&v| v <= x).count() as f64 / 200.0
        })
        .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn histogram_normalized() {
        let s: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let g = histogram(&s, 10, 0.0, 1.0, "x").unwrap();
        assert!(g.density.iter().all(|&d| (d - 1.0).abs() < 1e-12));
        assert_eq!(g.normalization_residual, 0.0);
    }

    #[test]
    fn too_few() {
        assert!(matches!(
            ks_distance(&[0.1; 10], |x| x),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
