use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
    #[error("no decaying envelope detected for semi-infinite integrand")]
    TailBoundFailure,
    #[error("argument {value} outside supported domain: {what}")]
    DomainError { what: &'static str, value: f64 },
    #[error("singular input: {0}")]
    SingularInput(&'static str),
    #[error("branch point at x = {0}")]
    BranchPointError(f64),
    #[error("Cauchy transform evaluated on the real axis")]
    RealAxisError,
    #[error("matrix point {0} too close to the spectral edge for the bulk expansion")]
    EdgeProximity(f64),
    #[error("frequency grid is not symmetric about zero")]
    AsymmetricGrid,
    #[error("samples violate K(-w) = conj K(w) (max deviation {0:e})")]
    NonHermitianSamples(f64),
    #[error("eigensolver exceeded the iteration cap at index {0}")]
    ConvergenceFailure(usize),
    #[error("eigenvalue gap {0:e} below degeneracy guard")]
    DegenerateSpectrum(f64),
    #[error("window [{lo}, {hi}] contains no samples")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("{got} samples, need at least {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("orthogonality residual {residual:e} exceeds bound at degree {degree}")]
    IllConditioned { degree: usize, residual: f64 },
    #[error("eigensolver check failed: {0}")]
    EigenCheck(String),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
