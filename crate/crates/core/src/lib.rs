//! Numerical toolkit for the weighted Laplacian `(1 - |z|^2)^{-alpha}` on the unit disk:
//! kernel and Green-function evaluation, a representation-formula Dirichlet solver,
//! boundary transforms, and sweeps that check the estimates behind Lipschitz
//! regularity of solutions.

// guards of the form `!(x > 0.0)` are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domain;
pub mod error;
pub mod estimates;
pub mod gauss;
pub mod kernels;
pub mod quadrature;
pub mod report;
pub mod solver;
pub mod transforms;

pub use domain::{
    validate_alpha, weight_rho, AlphaWeight, BoundaryAngle, BoundarySignal, DiskField, DiskPoint, PolarGrid,
    QuadratureSpec,
};
pub use error::{DiskError, Result};
pub use report::{BoundReport, BoundRow};

/// Library version, recorded in machine-readable outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
