//! GUE sampling, level curvatures under a fixed perturbation, windowing and
//! empirical distribution tools.

mod campaign;
mod stats;

pub use campaign::{run_campaign, CampaignOutcome, RunConfig};
pub use stats::{ecdf_ks, histogram, ks_distance, ks_distance_grid, mean_and_se};

use crate::bulk::semicircle_density;
use crate::eigh::{eigh, residual, Eigenvectors, HermitianMatrix};
use crate::error::{Error, Result};
use crate::numerics::RngStream;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Smallest allowed gap between neighbouring eigenvalues.
pub const MIN_GAP: f64 = 1e-12;

/// Density ∝ `e^{−(N/2) Tr H²}`: diagonal entries N(0, 1/N), off-diagonal
/// real and imaginary parts N(0, 1/(2N)). Entries are drawn row by row over
/// the upper triangle.
pub fn sample_gue(n: usize, rng: &mut RngStream) -> HermitianMatrix {
    let nf = n as f64;
    let sd_diag = (1.0 / nf).sqrt();
    let sd_off = (0.5 / nf).sqrt();
    HermitianMatrix::from_upper(n, |i, j| {
        if i == j {
            Complex64::new(rng.normal() * sd_diag, 0.0)
        } else {
            let re = rng.normal() * sd_off;
            let im = rng.normal() * sd_off;
            Complex64::new(re, im)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GueSample {
    pub n_dim: usize,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Eigenvectors,
}

impl GueSample {
    pub fn from_matrix(h: &HermitianMatrix) -> Result<Self> {
        let (eigenvalues, eigenvectors) = eigh(h)?;
        Ok(GueSample {
            n_dim: h.n(),
            eigenvalues,
            eigenvectors,
        })
    }

    /// Trace identity plus eigen-residuals of the listed levels.
    pub fn check(&self, h: &HermitianMatrix, levels: &[usize]) -> Result<()> {
        let tr: f64 = self.eigenvalues.iter().sum();
        if (tr - h.trace()).abs() > 1e-9 {
            return Err(Error::EigenCheck(format!(
                "trace mismatch {:e}",
                tr - h.trace()
            )));
        }
        let scale = self
            .eigenvalues
            .iter()
            .fold(0.0f64, |a, &b| a.max(b.abs()))
            .max(1e-300);
        let r = residual(h, &self.eigenvalues, &self.eigenvectors, levels);
        if r > 1e-10 * scale {
            return Err(Error::EigenCheck(format!("residual {r:e}")));
        }
        for &m in levels {
            let nv: f64 = self
                .eigenvectors
                .vector(m)
                .iter()
                .map(|z| z.norm_sqr())
                .sum();
            if (nv - 1.0).abs() > 1e-10 {
                return Err(Error::EigenCheck(format!("norm defect {:e}", nv - 1.0)));
            }
        }
        Ok(())
    }

    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationKind {
    /// `diag(±1)`, y_typ = 1 exactly.
    DiagRademacher,
    /// One GUE draw reused for every trial.
    FixedGueDraw,
    /// W = I; every curvature vanishes.
    Identity,
    /// A fresh GUE draw in every trial, nominal y_typ = 1.
    ResampledGue,
}

impl PerturbationKind {
    pub fn name(self) -> &'static str {
        match self {
            PerturbationKind::DiagRademacher => "diag_rademacher",
            PerturbationKind::FixedGueDraw => "fixed_gue_draw",
            PerturbationKind::Identity => "identity",
            PerturbationKind::ResampledGue => "resampled_gue",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "diag_rademacher" => Some(PerturbationKind::DiagRademacher),
            "fixed_gue_draw" => Some(PerturbationKind::FixedGueDraw),
            "identity" => Some(PerturbationKind::Identity),
            "resampled_gue" => Some(PerturbationKind::ResampledGue),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationMatrix {
    pub w: HermitianMatrix,
    /// `Tr W² / N`
    pub y_typ: f64,
    pub kind: PerturbationKind,
    /// Set when W is diagonal, for the fast path.
    diagonal: Option<Vec<f64>>,
}

impl PerturbationMatrix {
    pub fn from_matrix(w: HermitianMatrix, kind: PerturbationKind) -> Self {
        let n = w.n();
        let y_typ = w.frobenius_sq() / n as f64;
        let is_diag = (0..n).all(|i| (0..n).all(|j| i == j || w.get(i, j).norm() == 0.0));
        let diagonal = is_diag.then(|| (0..n).map(|i| w.get(i, i).re).collect());
        PerturbationMatrix {
            w,
            y_typ,
            kind,
            diagonal,
        }
    }

    /// `W u`
    pub fn apply(&self, u: &[Complex64]) -> Vec<Complex64> {
        match &self.diagonal {
            Some(d) => u.iter().zip(d).map(|(x, w)| x * w).collect(),
            None => self.w.mul_vec(u),
        }
    }
}

pub fn make_perturbation(
    n: usize,
    kind: PerturbationKind,
    rng: &mut RngStream,
) -> PerturbationMatrix {
    match kind {
        PerturbationKind::DiagRademacher => {
            let d: Vec<f64> = (0..n).map(|_| rng.sign()).collect();
            PerturbationMatrix::from_matrix(HermitianMatrix::from_diagonal(&d), kind)
        }
        PerturbationKind::FixedGueDraw => PerturbationMatrix::from_matrix(sample_gue(n, rng), kind),
        PerturbationKind::Identity => {
            PerturbationMatrix::from_matrix(HermitianMatrix::identity(n), kind)
        }
        PerturbationKind::ResampledGue => {
            let mut p = PerturbationMatrix::from_matrix(sample_gue(n, rng), kind);
            p.y_typ = 1.0;
            p
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureRecord {
    pub lambda: f64,
    /// `(λ − 2) N^{2/3}`
    pub zeta: f64,
    pub velocity: f64,
    pub curvature_raw: f64,
    /// `C / (πρ(λ) y_typ)`; NaN outside the bulk.
    pub c_bulk: f64,
    /// `C N^{1/3} / y_typ`
    pub c_edge: f64,
    /// `c_edge − N^{1/3}`
    pub c_sc: f64,
}

impl CurvatureRecord {
    pub fn new(lambda: f64, velocity: f64, curvature_raw: f64, n: usize, y_typ: f64) -> Self {
        let nf = n as f64;
        let rho = semicircle_density(lambda);
        let c_bulk = if rho > 0.0 {
            curvature_raw / (PI * rho * y_typ)
        } else {
            f64::NAN
        };
        let c_edge = curvature_raw * nf.cbrt() / y_typ;
        CurvatureRecord {
            lambda,
            zeta: (lambda - 2.0) * nf.powf(2.0 / 3.0),
            velocity,
            curvature_raw,
            c_bulk,
            c_edge,
            c_sc: c_edge - nf.cbrt(),
        }
    }
}

/// `(V_m, C_m)` with `C_m = Σ_{n≠m} |⟨m|W|n⟩|²/(λ_m − λ_n)`.
pub fn level_curvature(sample: &GueSample, w: &PerturbationMatrix, m: usize) -> (f64, f64) {
    let u = w.apply(sample.eigenvectors.vector(m));
    let proj = sample.eigenvectors.project(&u);
    let lm = sample.eigenvalues[m];
    let mut c = 0.0;
    for (k, z) in proj.iter().enumerate() {
        if k != m {
            c += z.norm_sqr() / (lm - sample.eigenvalues[k]);
        }
    }
    (proj[m].re, c)
}

fn check_gap(sample: &GueSample) -> Result<()> {
    let g = sample.min_gap();
    if g <= MIN_GAP {
        return Err(Error::DegenerateSpectrum(g));
    }
    Ok(())
}

/// Records for the listed levels.
pub fn curvatures_for(
    sample: &GueSample,
    w: &PerturbationMatrix,
    levels: &[usize],
) -> Result<Vec<CurvatureRecord>> {
    check_gap(sample)?;
    Ok(levels
        .iter()
        .map(|&m| {
            let (v, c) = level_curvature(sample, w, m);
            CurvatureRecord::new(sample.eigenvalues[m], v, c, sample.n_dim, w.y_typ)
        })
        .collect())
}

pub fn curvatures(sample: &GueSample, w: &PerturbationMatrix) -> Result<Vec<CurvatureRecord>> {
    let all: Vec<usize> = (0..sample.n_dim).collect();
    curvatures_for(sample, w, &all)
}

/// Record of the smallest eigenvalue.
pub fn extreme_curvature(sample: &GueSample, w: &PerturbationMatrix) -> Result<CurvatureRecord> {
    Ok(curvatures_for(sample, w, &[0])?[0])
}

/// Record of the largest eigenvalue mapped through H → −H, i.e. the
/// smallest-eigenvalue record of −H with the same W.
pub fn extreme_curvature_max(
    sample: &GueSample,
    w: &PerturbationMatrix,
) -> Result<CurvatureRecord> {
    check_gap(sample)?;
    let m = sample.n_dim - 1;
    let (v, c) = level_curvature(sample, w, m);
    Ok(CurvatureRecord::new(
        -sample.eigenvalues[m],
        v,
        -c,
        sample.n_dim,
        w.y_typ,
    ))
}

fn non_empty(v: Vec<f64>, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if v.is_empty() {
        Err(Error::EmptyWindow { lo, hi })
    } else {
        Ok(v)
    }
}

/// `c_bulk` of records with `λ ∈ [x − hw, x + hw]`.
pub fn window_bulk(
    records: &[CurvatureRecord],
    x_center: f64,
    half_width: f64,
) -> Result<Vec<f64>> {
    let (lo, hi) = window_bounds(x_center, half_width)?;
    non_empty(
        records
            .iter()
            .filter(|r| r.lambda >= lo && r.lambda <= hi && r.c_bulk.is_finite())
            .map(|r| r.c_bulk)
            .collect(),
        lo,
        hi,
    )
}

/// `c_sc` of records with `ζ ∈ [ζ_c − hw, ζ_c + hw]`.
pub fn window_edge(
    records: &[CurvatureRecord],
    zeta_center: f64,
    half_width: f64,
) -> Result<Vec<f64>> {
    let (lo, hi) = window_bounds(zeta_center, half_width)?;
    non_empty(
        records
            .iter()
            .filter(|r| r.zeta >= lo && r.zeta <= hi)
            .map(|r| r.c_sc)
            .collect(),
        lo,
        hi,
    )
}

fn window_bounds(center: f64, half_width: f64) -> Result<(f64, f64)> {
    if !(half_width > 0.0) {
        return Err(Error::DomainError {
            what: "half_width must be > 0",
            value: half_width,
        });
    }
    Ok((center - half_width, center + half_width))
}

/// Levels whose eigenvalue falls in `[lo, hi]`.
pub fn levels_in(eigenvalues: &[f64], lo: f64, hi: f64) -> Vec<usize> {
    eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l >= lo && l <= hi)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rng_stream;

    #[test]
    fn identity_gives_zero_curvature() {
        let mut rng = rng_stream(1, 0);
        let h = sample_gue(20, &mut rng);
        let s = GueSample::from_matrix(&h).unwrap();
        let w = make_perturbation(20, PerturbationKind::Identity, &mut rng);
        for r in curvatures(&s, &w).unwrap() {
            assert!(r.curvature_raw.abs() < 1e-12);
        }
    }

    #[test]
    fn rademacher_ytyp() {
        let mut rng = rng_stream(3, 0);
        let w = make_perturbation(37, PerturbationKind::DiagRademacher, &mut rng);
        assert_eq!(w.y_typ, 1.0);
    }

    #[test]
    fn empty_window() {
        let r = CurvatureRecord::new(0.1, 0.0, 0.2, 10, 1.0);
        assert!(matches!(
            window_bulk(&[r], 1.5, 0.1),
            Err(Error::EmptyWindow { .. })
        ));
        assert_eq!(window_bulk(&[r], 0.0, 3.0).unwrap().len(), 1);
    }
}
