use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponential integral diverges at z = 0")]
    EiAtZero,
    #[error("exponential integral overflows at z = {0}")]
    Overflow(Complex64),
    #[error("continued fraction did not converge at w = {0}")]
    ContinuedFraction(Complex64),
    #[error("multipole order n = {0} is not one of 1, 2, 3")]
    InvalidOrder(i32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quantity is singular on the lightcone X = T")]
    LightconeSingular,
    #[error("cell is not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("tolerance not met: achieved {achieved:.3e}, requested {requested:.3e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },
    #[error("contour radius {radius} too large, must stay below {limit}")]
    RadiusTooLarge { radius: f64, limit: f64 },
    #[error("contour refinement disagreement {0:.3e}")]
    ContourRefinement(f64),
}
