//! Fixed inputs shared by the benchmarks.

use curvelab_core::mc::{PerturbationKind, RunConfig};

/// Soft-edge points spanning the bulk-matching and Gaussian regimes.
pub const ZETAS: [f64; 3] = [-4.0, 0.0, 4.0];

/// A small single-threaded campaign, so timings do not depend on the machine's core count.
pub fn small_campaign(n_dim: usize, trials: usize) -> RunConfig {
    RunConfig {
        seed: 1,
        n_dim,
        trials,
        kind: PerturbationKind::DiagRademacher,
        threads: Some(1),
    }
}
