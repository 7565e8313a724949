//! Parallel trial runner. Trial i draws H (and a resampled W) from
//! `rng_stream(seed, i)`; a campaign-wide W comes from the reserved stream
//! `u64::MAX`. Results are returned in trial order, so the output does not
//! depend on the thread count.

use super::{make_perturbation, sample_gue, GueSample, PerturbationKind, PerturbationMatrix};
use crate::eigh::HermitianMatrix;
use crate::error::{Error, Result};
use crate::numerics::rng_stream;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const W_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub n_dim: usize,
    pub trials: usize,
    pub kind: PerturbationKind,
    /// Worker cap; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignOutcome<T> {
    /// One entry per kept trial, in trial order.
    pub results: Vec<T>,
    /// Trials dropped for a degenerate spectrum or a failed eigen check.
    pub discarded: usize,
    pub y_typ: f64,
}

/// What a trial closure sees.
pub struct Trial<'a> {
    pub index: usize,
    pub h: &'a HermitianMatrix,
    pub sample: &'a GueSample,
    pub w: &'a PerturbationMatrix,
}

fn discardable(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateSpectrum(_) | Error::EigenCheck(_) | Error::ConvergenceFailure(_)
    )
}

pub fn run_campaign<T, F>(config: &RunConfig, f: F) -> Result<CampaignOutcome<T>>
where
    T: Send,
    F: Fn(&Trial) -> Result<T> + Sync,
{
    if config.n_dim < 2 {
        return Err(Error::DomainError {
            what: "n_dim must be >= 2",
            value: config.n_dim as f64,
        });
    }
    let n = config.n_dim;
    let shared = match config.kind {
        PerturbationKind::ResampledGue => None,
        kind => Some(make_perturbation(
            n,
            kind,
            &mut rng_stream(config.seed, W_STREAM),
        )),
    };
    let run_one = |i: usize| -> Result<Option<T>> {
        let mut rng = rng_stream(config.seed, i as u64);
        let h = sample_gue(n, &mut rng);
        let fresh;
        let w = match &shared {
            Some(w) => w,
            None => {
                fresh = make_perturbation(n, PerturbationKind::ResampledGue, &mut rng);
                &fresh
            }
        };
        let sample = match GueSample::from_matrix(&h) {
            Ok(s) => s,
            Err(e) if discardable(&e) => return Ok(None),
            Err(e) => return Err(e),
        };
        let trial = Trial {
            index: i,
            h: &h,
            sample: &sample,
            w,
        };
        match f(&trial) {
            Ok(v) => Ok(Some(v)),
            Err(e) if discardable(&e) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let threads = config
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    let raw: Vec<Result<Option<T>>> =
        pool.install(|| (0..config.trials).into_par_iter().map(run_one).collect());
    let mut results = Vec::with_capacity(raw.len());
    let mut discarded = 0;
    for r in raw {
        match r? {
            Some(v) => results.push(v),
            None => discarded += 1,
        }
    }
    Ok(CampaignOutcome {
        results,
        discarded,
        y_typ: shared.as_ref().map_or(1.0, |w| w.y_typ),
    })
}
