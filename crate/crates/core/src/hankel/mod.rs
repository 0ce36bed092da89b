//! Generalized Hankel kernels `F∓(x, y)` and checks of their defining
//! properties: the radial eigen-equation in `x`, the boundary condition at
//! `x → 0`, and a truncated transform roundtrip.

pub mod bessel;
pub mod kernel;
pub mod quadrature;
pub mod roundtrip;

pub use bessel::{bessel_j, hat_j};
pub use kernel::{kernel, kernel_boundary_ratio, kernel_ode_residual, KernelSample, KernelSign};
pub use roundtrip::{roundtrip_residual, GaussianBump};
