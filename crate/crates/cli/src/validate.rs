//! Built-in acceptance checks. Each criterion contributes one or more
//! checks; the report has one CSV row per check.

use crate::args::{Common, ValidateArgs};
use crate::commands::{
    NOTE_BULK_N, NOTE_CAUCHY, NOTE_CSC, NOTE_EDGE_W, NOTE_EXTREME_SIGN, NOTE_F_NORM, NOTE_N3,
    NOTE_TAIL,
};
use crate::report::{fmt_num, Check, Report};
use crate::CliError;
use curvelab_core::airy::airy_eval;
use curvelab_core::bulk::{mean_curvature, semicircle_density, zd_cdf, zd_pdf};
use curvelab_core::edge::{
    beta_integral, beta_triple, edge_limit_forms, fit_density_coefficient, gaussian_rescaled_error,
    invert_edge_char_fn, normalization, EdgeProfile, LimitForm,
};
use curvelab_core::extreme::{charfn_extreme_direct, empirical_charfn, truncated_op_basis};
use curvelab_core::hermite::{
    asymptotics_bulk, asymptotics_edge, char_fn_finite_with, invert_finite_char_fn, FiniteKernels,
    FiniteScaling, HermiteContext,
};
use curvelab_core::mc::{
    curvatures_for, extreme_curvature, levels_in, run_campaign, window_bulk, window_edge,
    CurvatureRecord, PerturbationKind, RunConfig,
};
use curvelab_core::mc::{ks_distance, ks_distance_grid, mean_and_se};
use curvelab_core::Complex64;
type Result<T> = curvelab_core::Result<T>;
use std::f64::consts::PI;

type Checks = Vec<Check>;

fn c1_airy() -> Result<Checks> {
    let h = 1e-3;
    let (mut wr, mut ode) = (0.0f64, 0.0f64);
    for j in 0..181 {
        let z = -10.0 + 0.1 * j as f64;
        let v = airy_eval(z)?;
        wr = wr.max((v.wronskian() - 1.0 / PI).abs());
        let s: Vec<_> = [-2.0, -1.0, 1.0, 2.0]
            .iter()
            .map(|k| airy_eval(z + k * h))
            .collect::<Result<_>>()?;
        // fourth-order second difference
        let d2 = |f: &dyn Fn(&curvelab_core::airy::AiryValues) -> f64, c: f64| {
            (-f(&s[0]) + 16.0 * f(&s[1]) - 30.0 * c + 16.0 * f(&s[2]) - f(&s[3])) / (12.0 * h * h)
        };
        let ra = (d2(&|a| a.ai, v.ai) - z * v.ai).abs();
        let rb = (d2(&|a| a.bi, v.bi) - z * v.bi).abs() / v.bi.abs().max(1.0);
        ode = ode.max(ra).max(rb);
    }
    Ok(vec![
        Check::at_most("wronskian", wr, 1e-9),
        Check::at_most("airy_ode_residual", ode, 1e-6),
    ])
}

fn c2_beta() -> Result<Checks> {
    let h = 1e-3;
    let mut ode = 0.0f64;
    for i in 0..21 {
        for j in 0..21 {
            let c = -3.0 + 0.3 * i as f64;
            let z = -3.0 + 0.3 * j as f64;
            let b = |zz: f64| beta_triple(c, zz).map(|t| t.beta);
            let dz = (b(z - 2.0 * h)? - 8.0 * b(z - h)? + 8.0 * b(z + h)? - b(z + 2.0 * h)?)
                / (12.0 * h);
            ode = ode.max((dz + c * b(z)? - airy_eval(z)?.ai).abs());
        }
    }
    let eps = 1e-6;
    let mut gap = 0.0f64;
    for z in [-2.0, 0.0, 2.0] {
        let slope = beta_triple(0.0, z)?.dc;
        let jump = beta_triple(eps, z)?.beta - beta_triple(-eps, z)?.beta - 2.0 * eps * slope;
        gap = gap.max(jump.abs());
    }
    let mut rel = 0.0f64;
    for z in [-2.0, 0.0, 2.0] {
        let want = PI * airy_eval(z)?.bi;
        rel = rel.max((beta_integral(z)? / want - 1.0).abs());
    }
    Ok(vec![
        Check::at_most("beta_ode_residual", ode, 1e-8),
        Check::at_most("beta_continuity_gap", gap, 1e-6),
        Check::at_most("beta_integral_vs_pi_bi", rel, 1e-6),
    ])
}

fn c3_normalization() -> Result<Checks> {
    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    for z in [-4.0, 0.0, 4.0] {
        let (a, b) = normalization(z)?;
        e1 = e1.max((a - 1.0).abs());
        e2 = e2.max(b.abs());
    }
    Ok(vec![
        Check::at_most("normalization_p1", e1, 1e-6),
        Check::at_most("normalization_p2", e2, 1e-6),
    ])
}

fn c4_tail() -> Result<Checks> {
    let mut out = Vec::new();
    for z in [-2.0, 0.0, 2.0] {
        let p = EdgeProfile::new(z)?;
        let c: f64 = 50.0;
        let e = (c.powi(4) * p.pdf(c)? / p.tail_coefficient() - 1.0).abs();
        out.push(Check::at_most(format!("tail_law_zeta_{z}"), e, 0.05));
    }
    let t0 = EdgeProfile::new(0.0)?.tail_coefficient();
    out.push(Check::at_most(
        "tail_coefficient_zeta_0",
        (t0 - 0.0118).abs(),
        5e-5,
    ));
    Ok(out)
}

fn c5_bulk_match() -> Result<Checks> {
    let z = -10.0;
    let lim = edge_limit_forms(z, LimitForm::BulkMatch, -10.0, 10.0, 401)?;
    let p = EdgeProfile::new(z)?;
    let mut sup = 0.0f64;
    let mut peak = 0.0f64;
    for (c, l) in lim.abscissa.iter().zip(&lim.density) {
        let v = p.pdf(*c)?;
        peak = peak.max(v);
        sup = sup.max((v - l).abs());
    }
    Ok(vec![Check::at_most(
        "bulk_match_zeta_-10",
        sup / peak,
        0.05,
    )])
}

fn c6_gaussian() -> Result<Checks> {
    let e: Vec<f64> = [4.0, 9.0, 16.0]
        .iter()
        .map(|&z| gaussian_rescaled_error(z))
        .collect::<Result<_>>()?;
    Ok(vec![
        Check::at_most("gaussian_rescaled_zeta_9", e[1], 0.15),
        Check::holds("gaussian_error_decreasing", e[0] > e[1] && e[1] > e[2]),
    ])
}

fn c7_two_route() -> Result<Checks> {
    let mut sup = 0.0f64;
    for z in [-2.0, 0.0, 2.0] {
        let g = invert_edge_char_fn(z, -6.0, 6.0, 121, 40.0, 0.05)?;
        let p = EdgeProfile::new(z)?;
        for (c, d) in g.abscissa.iter().zip(&g.density) {
            sup = sup.max((d - p.pdf(*c)?).abs());
        }
    }
    Ok(vec![Check::at_most("two_route_sup", sup, 1e-4)])
}

fn c8_finite() -> Result<Checks> {
    let mut out = Vec::new();
    let mut k0 = 0.0f64;
    for n in [50, 100, 200] {
        let ctx = HermiteContext::new(n)?;
        let fk = FiniteKernels::new(0.0, &ctx);
        k0 = k0.max((char_fn_finite_with(&fk, 1e-9, FiniteScaling::Bulk)? - 1.0).norm());
    }
    out.push(Check::at_most("k_at_zero", k0, 1e-8));

    let ctx = HermiteContext::new(100)?;
    let g = invert_finite_char_fn(0.0, &ctx, FiniteScaling::Bulk, -8.0, 8.0, 321)?;
    let sup = g.sup_diff(|c| zd_pdf(c, 0.0).unwrap_or(f64::NAN));
    out.push(Check::at_most("finite_n100_vs_limit", sup, 0.03));

    let ctx = HermiteContext::new(400)?;
    let mu = 0.3;
    let eps = Complex64::new(mu, 0.5 / 400.0);
    let k = FiniteKernels::new(mu, &ctx).kernel_set(eps)?;
    let ratio = k.f2.ratio(k.f1);
    let want = 400.0 * Complex64::new(mu / 2.0, -PI * semicircle_density(mu));
    out.push(Check::at_most(
        "f2_over_f1_n400",
        (ratio / want - 1.0).norm(),
        0.05,
    ));

    let mut bulk = Vec::new();
    let mut edge = Vec::new();
    for n in [100, 200, 400] {
        let ctx = HermiteContext::new(n)?;
        let b = asymptotics_bulk(0.4, 1.0, &ctx)?;
        bulk.push([b.err_p_n, b.err_w1, b.err_f1, b.err_f2]);
        let e = asymptotics_edge(0.0, 0.2, &ctx)?;
        edge.push([
            e.err_p_n,
            e.err_p_nm1,
            e.err_f_n,
            e.err_w1,
            e.err_f1,
            e.err_f2,
            e.err_ratio_correction,
            e.f2_over_nf1,
        ]);
    }
    let dec = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let ok_b = (0..4).all(|j| dec(&bulk.iter().map(|r| r[j]).collect::<Vec<_>>()));
    let ok_e = (0..8).all(|j| dec(&edge.iter().map(|r| r[j]).collect::<Vec<_>>()));
    out.push(Check::holds("bulk_asymptotics_decreasing", ok_b));
    out.push(Check::holds("edge_asymptotics_decreasing", ok_e));
    Ok(out)
}

fn bulk_campaign(
    seed: u64,
    n: usize,
    trials: usize,
    threads: Option<usize>,
) -> Result<Vec<CurvatureRecord>> {
    let config = RunConfig {
        seed,
        n_dim: n,
        trials,
        kind: PerturbationKind::DiagRademacher,
        threads,
    };
    let out = run_campaign(&config, |tr| {
        let mut levels = levels_in(&tr.sample.eigenvalues, -0.5, 0.5);
        levels.extend(levels_in(&tr.sample.eigenvalues, 0.9, 1.1));
        tr.sample.check(tr.h, &levels)?;
        curvatures_for(tr.sample, tr.w, &levels)
    })?;
    Ok(out.results.into_iter().flatten().collect())
}

fn c9_mc_bulk(seed: u64, threads: Option<usize>) -> Result<Checks> {
    let recs = bulk_campaign(seed, 100, 2000, threads)?;
    let c = window_bulk(&recs, 0.0, 0.5)?;
    let ks = ks_distance(&c, |t| zd_cdf(t, 0.0).unwrap_or(f64::NAN))?;
    // DiagRademacher has y_typ = 1
    let raw: Vec<f64> = recs
        .iter()
        .filter(|r| (r.lambda - 1.0).abs() <= 0.1)
        .map(|r| r.curvature_raw)
        .collect();
    let (m, se) = mean_and_se(&raw);
    Ok(vec![
        Check::at_most("mc_bulk_ks", ks, 0.05),
        Check::at_most(
            "mc_bulk_mean_x1_in_se",
            (m - mean_curvature(1.0)?).abs() / se,
            3.0,
        ),
    ])
}

fn c10_mc_edge(seed: u64, threads: Option<usize>) -> Result<Checks> {
    let n = 200;
    let s = (n as f64).powf(-2.0 / 3.0);
    let config = RunConfig {
        seed,
        n_dim: n,
        trials: 5000,
        kind: PerturbationKind::FixedGueDraw,
        threads,
    };
    let out = run_campaign(&config, |tr| {
        let levels = levels_in(&tr.sample.eigenvalues, 2.0 - 0.5 * s, 2.0 + 0.5 * s);
        tr.sample.check(tr.h, &levels)?;
        curvatures_for(tr.sample, tr.w, &levels)
    })?;
    let recs: Vec<CurvatureRecord> = out.results.into_iter().flatten().collect();
    let c = window_edge(&recs, 0.0, 0.5)?;
    let p = EdgeProfile::new(0.0)?;
    let (left, right) = p.tail_masses(40.0);
    let ks = ks_distance_grid(&c, &p.grid(-40.0, 40.0, 1601)?, left, right)?;
    Ok(vec![Check::at_most("mc_edge_ks", ks, 0.10)])
}

fn c11_extreme(seed: u64, threads: Option<usize>) -> Result<Checks> {
    let mut out = Vec::new();
    for n in [2, 3] {
        let config = RunConfig {
            seed,
            n_dim: n,
            trials: 1_000_000,
            kind: PerturbationKind::ResampledGue,
            threads,
        };
        let c = run_campaign(&config, |tr| Ok(extreme_curvature(tr.sample, tr.w)?.c_edge))?.results;
        let mut worst = 0.0f64;
        for w in [0.5, 1.0, 2.0] {
            worst = worst.max((empirical_charfn(&c, w) - charfn_extreme_direct(w, n)?).norm());
        }
        out.push(Check::at_most(
            format!("extreme_n{n}_mc_vs_quadrature"),
            worst,
            0.01,
        ));
    }
    Ok(out)
}

fn c12_truncated() -> Result<Checks> {
    let mut res = 0.0f64;
    for lm in [-3.0, 0.0, 1.0] {
        res = res.max(truncated_op_basis(12, 10, lm)?.orthogonality_residual);
    }
    let b = truncated_op_basis(12, 10, -8.0)?;
    let mut dev = 0.0f64;
    for k in 0..=12 {
        dev = dev.max(b.a[k].abs());
        if k >= 1 {
            dev = dev.max((b.b[k] - k as f64 / 10.0).abs());
        }
    }
    Ok(vec![
        Check::at_most("truncated_orthogonality", res, 1e-8),
        Check::at_most("truncated_deep_matches_hermite", dev, 1e-8),
    ])
}

fn c13_threads(seed: u64) -> Result<Checks> {
    let a = bulk_campaign(seed, 50, 200, Some(1))?;
    let b = bulk_campaign(seed, 50, 200, Some(3))?;
    Ok(vec![Check::holds("thread_count_invariance", a == b)])
}

pub fn validate(a: &ValidateArgs, common: &Common) -> std::result::Result<Report, CliError> {
    let seed = common.seed;
    let threads = common.threads;
    let mut r = Report::new("validate");
    r.columns(&["criterion", "check", "value", "bound", "status"]);
    let mut run = |id: u32, checks: Result<Checks>| -> std::result::Result<(), CliError> {
        for c in checks? {
            r.text_row(vec![
                id.to_string(),
                c.name.clone(),
                fmt_num(c.value),
                fmt_num(c.bound),
                c.status.to_string(),
            ]);
            r.check(c);
        }
        Ok(())
    };
    run(1, c1_airy())?;
    run(2, c2_beta())?;
    run(3, c3_normalization())?;
    run(4, c4_tail())?;
    run(5, c5_bulk_match())?;
    run(6, c6_gaussian())?;
    run(7, c7_two_route())?;
    run(8, c8_finite())?;
    run(9, c9_mc_bulk(seed, threads))?;
    if a.full {
        run(10, c10_mc_edge(seed, threads))?;
    } else {
        run(10, Ok(vec![Check::skipped("mc_edge_ks")]))?;
    }
    run(11, c11_extreme(seed, threads))?;
    run(12, c12_truncated())?;
    run(13, c13_threads(seed))?;
    let (b, k) = fit_density_coefficient()?;
    r.result("fitted_b", b);
    r.result("fitted_airy_correction", k);
    r.result("airy_correction_classical", 5.0 / 48.0);
    r.deviations.extend([
        NOTE_CSC,
        NOTE_CAUCHY,
        NOTE_TAIL,
        NOTE_EDGE_W,
        NOTE_EXTREME_SIGN,
        NOTE_N3,
        NOTE_BULK_N,
        NOTE_F_NORM,
    ]);
    Ok(r)
}
