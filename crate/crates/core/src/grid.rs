//! Densities tabulated on a uniform grid.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionGrid {
    pub abscissa: Vec<f64>,
    pub density: Vec<f64>,
    pub step: f64,
    pub range: (f64, f64),
    /// |∫density − 1| over the grid (trapezoid), plus any known tail mass.
    pub normalization_residual: f64,
    /// Which curvature normalization the abscissa uses (c_bulk, c_edge, c_sc, ...).
    pub convention: String,
}

impl DistributionGrid {
    pub fn uniform(lo: f64, hi: f64, points: usize) -> Vec<f64> {
        assert!(points >= 2 && hi > lo);
        let h = (hi - lo) / (points - 1) as f64;
        (0..points).map(|i| lo + i as f64 * h).collect()
    }

    /// Tabulate `f` on `points` nodes of `[lo, hi]`; `tail_mass` is the known
    /// probability outside the range.
    pub fn from_fn<F: FnMut(f64) -> f64>(
        lo: f64,
        hi: f64,
        points: usize,
        tail_mass: f64,
        convention: &str,
        mut f: F,
    ) -> Self {
        let abscissa = Self::uniform(lo, hi, points);
        let density: Vec<f64> = abscissa.iter().map(|&c| f(c)).collect();
        Self::from_values(abscissa, density, tail_mass, convention)
    }

    pub fn from_values(
        abscissa: Vec<f64>,
        density: Vec<f64>,
        tail_mass: f64,
        convention: &str,
    ) -> Self {
        let n = abscissa.len();
        let step = if n > 1 {
            abscissa[1] - abscissa[0]
        } else {
            0.0
        };
        let mut g = DistributionGrid {
            range: (abscissa[0], abscissa[n - 1]),
            abscissa,
            density,
            step,
            normalization_residual: 0.0,
            convention: convention.to_string(),
        };
        g.normalization_residual = (g.integral() + tail_mass - 1.0).abs();
        g
    }

    pub fn integral(&self) -> f64 {
        let n = self.density.len();
        if n < 2 {
            return 0.0;
        }
        let inner: f64 = self.density[1..n - 1].iter().sum();
        self.step * (inner + 0.5 * (self.density[0] + self.density[n - 1]))
    }

    /// Linear interpolation, zero outside the range.
    pub fn value_at(&self, c: f64) -> f64 {
        if c < self.range.0 || c > self.range.1 {
            return 0.0;
        }
        let t = (c - self.range.0) / self.step;
        let i = (t.floor() as usize).min(self.density.len() - 2);
        let f = t - i as f64;
        self.density[i] * (1.0 - f) + self.density[i + 1] * f
    }

    pub fn sup_diff<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.abscissa
            .iter()
            .zip(&self.density)
            .map(|(&c, &p)| (p - f(c)).abs())
            .fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> f64 {
        let mut best = 0;
        for i in 1..self.density.len() {
            if self.density[i] > self.density[best] {
                best = i;
            }
        }
        self.abscissa[best]
    }

    pub fn peak(&self) -> f64 {
        self.density
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.density.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Cumulative trapezoid integral starting from `lower_mass` at the left end.
    pub fn cumulative(&self, lower_mass: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.density.len());
        let mut acc = lower_mass;
        out.push(acc);
        for w in self.density.windows(2) {
            acc += 0.5 * self.step * (w[0] + w[1]);
            out.push(acc);
        }
        out
    }
}
