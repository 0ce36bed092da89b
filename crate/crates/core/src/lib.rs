//! Numerical verification of a topological Levinson theorem for the
//! half-line operators `H_{m,κ} = −∂² + (m² − ¼)x^{−2}` with the boundary
//! condition `f(x) ≈ c(κx^{½−m} + x^{½+m})` at the origin.
//!
//! The winding number of the wave-operator symbol around the compactified
//! square ([`winding`]) is compared against the closed-form count of complex
//! eigenvalues ([`model`]), which is itself cross-checked by ODE shooting.

// `!(x > 0.0)` guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hankel;
pub mod model;
pub mod special_functions;
pub mod symbol;
pub mod winding;

pub use error::{Error, Result};
pub use model::{
    count_eigenvalues, eigen_modes, exceptional_kappa, is_exceptional, make_params, shooting_residual, Branch, ExceptionalCheck,
    ModelParams, Mode, SpectrumReport,
};
pub use num_complex::Complex64;
pub use symbol::{BoundaryPoint, BoundarySymbol, Edge};
pub use winding::{total_winding, verify_levinson, VerificationRecord, WindingReport};
