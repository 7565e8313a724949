//! Level-curvature statistics of the Gaussian Unitary Ensemble.
//!
//! Three independent routes to the same distributions:
//! closed-form bulk and soft-edge densities ([`bulk`], [`edge`]), exact
//! finite-N orthogonal-polynomial kernels ([`hermite`]), and Monte Carlo over
//! sampled matrices ([`mc`]). [`extreme`] covers the smallest eigenvalue.

pub mod airy;
pub mod bulk;
pub mod contour;
pub mod edge;
pub mod eigh;
pub mod error;
pub mod extreme;
pub mod fourier;
pub mod grid;
pub mod hermite;
pub mod mc;
pub mod numerics;

pub use error::{Error, Result};
pub use num_complex::Complex64;
