use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} lies within 1e-12 of a Gamma pole")]
    GammaPole(Complex64),

    #[error("invalid order m = {0}: require 0 < |Re m| < 1")]
    InvalidOrder(Complex64),

    #[error("(x^2/4)^m diverges at x = 0 when Re m < 0")]
    DivergentPower,

    #[error("exceptional pair: strip index {witness} is {distance:e} from the strip boundary")]
    Exceptional { witness: i64, distance: f64 },

    #[error("vanishing denominator |1 - s e^(-i pi m) (x^2/4)^m| = {0:e}")]
    VanishingDenominator(f64),

    #[error("phase refinement exhausted at depth {depth} near s = {at}")]
    RefinementExhausted { depth: u32, at: f64 },

    #[error("winding total {total} is not integral (residual {residual:e})")]
    NonIntegral { total: f64, residual: f64 },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("boundary fit is ill-conditioned (condition number {0:e})")]
    FitConditioning(f64),

    #[error("Bessel argument {0} outside the series window (0, 60]")]
    OutOfWindow(f64),

    #[error("mode {0} overflows double precision")]
    ModeOverflow(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
