//! Scaled arithmetic, adaptive quadrature and per-trial random streams.

pub mod quad;
pub mod rng;
pub mod scaled;

pub use quad::{quad_finite, quad_semi_infinite, QuadSpec, QuadValue};
pub use rng::{rng_stream, RngStream};
pub use scaled::{ScaledComplex, ScaledReal};
