use crate::args::{Common, Grid, McArgs, McExtremeArgs, Side};
use crate::commands::{NOTE_CSC, NOTE_EDGE_W, NOTE_EXTREME_BASIS, NOTE_EXTREME_SIGN, NOTE_N3};
use crate::report::{Check, Report};
use crate::CliError;
use curvelab_core::bulk::{mean_curvature, zd_cdf, zd_pdf, BulkPoint};
use curvelab_core::edge::EdgeProfile;
use curvelab_core::extreme::{charfn_extreme_direct, empirical_charfn};
use curvelab_core::mc::{
    curvatures_for, extreme_curvature, extreme_curvature_max, levels_in, run_campaign, window_bulk,
    window_edge, CampaignOutcome, CurvatureRecord, PerturbationKind, RunConfig,
};
use curvelab_core::mc::{histogram, ks_distance, ks_distance_grid, mean_and_se};

pub const BULK_DEFAULTS: (PerturbationKind, Grid) = (
    PerturbationKind::DiagRademacher,
    Grid {
        lo: -6.0,
        hi: 6.0,
        points: 48,
    },
);
pub const EDGE_DEFAULTS: (PerturbationKind, Grid) = (
    PerturbationKind::FixedGueDraw,
    Grid {
        lo: -8.0,
        hi: 4.0,
        points: 48,
    },
);

/// Half-width of the tabulated edge law used for KS; mass beyond it comes
/// from the tail series.
const EDGE_TABLE: f64 = 40.0;

fn collect(
    common: &Common,
    a: &McArgs,
    kind: PerturbationKind,
    lo: f64,
    hi: f64,
) -> Result<CampaignOutcome<Vec<CurvatureRecord>>, CliError> {
    let config = RunConfig {
        seed: common.seed,
        n_dim: a.n,
        trials: a.trials,
        kind,
        threads: common.threads,
    };
    Ok(run_campaign(&config, |tr| {
        let levels = levels_in(&tr.sample.eigenvalues, lo, hi);
        tr.sample.check(tr.h, &levels)?;
        curvatures_for(tr.sample, tr.w, &levels)
    })?)
}

fn histogram_rows(
    r: &mut Report,
    samples: &[f64],
    g: &Grid,
    col: &'static str,
    model: impl Fn(f64) -> f64,
) -> Result<(), CliError> {
    let h = histogram(samples, g.points, g.lo, g.hi, col)?;
    for (c, d) in h.abscissa.iter().zip(&h.density) {
        r.row(&[*c, *d, model(*c)]);
    }
    Ok(())
}

pub fn mc_bulk(a: &McArgs, common: &Common) -> Result<Report, CliError> {
    let kind = a.kind.unwrap_or(BULK_DEFAULTS.0);
    let x = a.window.center;
    let hw = a.window.half_width;
    BulkPoint::new(x)?;
    let out = collect(common, a, kind, x - hw, x + hw)?;
    let records: Vec<CurvatureRecord> = out.results.iter().flatten().copied().collect();
    let c = window_bulk(&records, x, hw)?;
    let ks = ks_distance(&c, |t| zd_cdf(t, x).unwrap_or(f64::NAN))?;
    let raw: Vec<f64> = records
        .iter()
        .map(|r| r.curvature_raw / out.y_typ)
        .collect();
    let (mean, se) = mean_and_se(&raw);
    let expected = mean_curvature(x)?;
    let v: Vec<f64> = records.iter().map(|r| r.velocity).collect();
    let (vm, _) = mean_and_se(&v);
    let m2 = v.iter().map(|t| (t - vm).powi(2)).sum::<f64>() / v.len() as f64;
    let m3 = v.iter().map(|t| (t - vm).powi(3)).sum::<f64>() / v.len() as f64;
    let skew = m3 / m2.powf(1.5);

    let mut r = Report::new("mc-bulk");
    r.columns(&["c_bulk", "density", "zd_pdf"]);
    let g = a.grid.unwrap_or(BULK_DEFAULTS.1);
    histogram_rows(&mut r, &c, &g, "c_bulk", |t| {
        zd_pdf(t, x).unwrap_or(f64::NAN)
    })?;
    r.result("kind", kind.name());
    r.result("samples", c.len());
    r.result("discarded_trials", out.discarded);
    r.result("y_typ", out.y_typ);
    r.result("ks", ks);
    r.result("mean_curvature_over_y_typ", mean);
    r.result("mean_curvature_se", se);
    r.result("mean_curvature_expected", expected);
    r.result("velocity_skewness", skew);
    r.check(Check::at_most("ks_vs_limit", ks, 0.05));
    r.check(Check::at_most(
        "mean_within_3se",
        (mean - expected).abs(),
        3.0 * se,
    ));
    Ok(r)
}

pub fn mc_edge(a: &McArgs, common: &Common) -> Result<Report, CliError> {
    let kind = a.kind.unwrap_or(EDGE_DEFAULTS.0);
    let z = a.window.center;
    let hw = a.window.half_width;
    let scale = (a.n as f64).powf(-2.0 / 3.0);
    let out = collect(
        common,
        a,
        kind,
        2.0 + (z - hw) * scale,
        2.0 + (z + hw) * scale,
    )?;
    let records: Vec<CurvatureRecord> = out.results.iter().flatten().copied().collect();
    let c = window_edge(&records, z, hw)?;
    let prof = EdgeProfile::new(z)?;
    let table = prof.grid(-EDGE_TABLE, EDGE_TABLE, 1601)?;
    let (left, right) = prof.tail_masses(EDGE_TABLE);
    let ks = ks_distance_grid(&c, &table, left, right)?;

    let mut r = Report::new("mc-edge");
    r.columns(&["c_sc", "density", "pdf_edge"]);
    let g = a.grid.unwrap_or(EDGE_DEFAULTS.1);
    histogram_rows(&mut r, &c, &g, "c_sc", |t| prof.pdf(t).unwrap_or(f64::NAN))?;
    let (mean, se) = mean_and_se(&c);
    r.result("kind", kind.name());
    r.result("samples", c.len());
    r.result("discarded_trials", out.discarded);
    r.result("y_typ", out.y_typ);
    r.result("ks", ks);
    r.result("mean_c_sc", mean);
    r.result("mean_c_sc_se", se);
    r.check(Check::at_most("ks_vs_limit", ks, 0.10));
    r.deviations.push(NOTE_CSC);
    if kind == PerturbationKind::FixedGueDraw {
        r.deviations.push(NOTE_EDGE_W);
    }
    Ok(r)
}

pub fn mc_extreme(a: &McExtremeArgs, common: &Common) -> Result<Report, CliError> {
    let config = RunConfig {
        seed: common.seed,
        n_dim: a.n,
        trials: a.trials,
        kind: a.kind,
        threads: common.threads,
    };
    let side = a.side;
    let out = run_campaign(&config, |tr| {
        let rec = match side {
            Side::Min => extreme_curvature(tr.sample, tr.w)?,
            Side::Max => extreme_curvature_max(tr.sample, tr.w)?,
        };
        Ok(rec.c_edge)
    })?;
    let c = &out.results;
    let quad = a.n == 2 || a.n == 3;
    let mut r = Report::new("mc-extreme");
    if quad {
        r.columns(&[
            "omega", "re_mc", "im_mc", "se", "re_quad", "im_quad", "abs_diff",
        ]);
    } else {
        r.columns(&["omega", "re_mc", "im_mc", "se"]);
    }
    let mut worst = 0.0f64;
    let n = c.len() as f64;
    for &w in &a.omega {
        let k = empirical_charfn(c, w);
        // |e^{-iωc}| = 1, so the variance of the complex mean is (1 − |K|²)/n.
        let se = ((1.0 - k.norm_sqr()).max(0.0) / n).sqrt();
        if quad {
            let q = charfn_extreme_direct(w, a.n)?;
            let d = (k - q).norm();
            worst = worst.max(d);
            r.row(&[w, k.re, k.im, se, q.re, q.im, d]);
        } else {
            r.row(&[w, k.re, k.im, se]);
        }
    }
    r.result("kind", a.kind.name());
    r.result("samples", c.len());
    r.result("discarded_trials", out.discarded);
    if quad {
        r.result("max_abs_diff", worst);
        r.check(Check::at_most("mc_vs_quadrature", worst, 0.01));
    }
    r.deviations.extend([NOTE_EXTREME_SIGN, NOTE_EXTREME_BASIS]);
    if a.n == 3 {
        r.deviations.push(NOTE_N3);
    }
    Ok(r)
}
