//! Solvers for subdiffusion (Caputo time derivative of order alpha in (0,1))
//! and 1-D space-time fractional diffusion (Riemann-Liouville space
//! derivative of order beta in (3/2,2)): L1 time stepping with piecewise
//! linear Galerkin finite elements, Mittag-Leffler reference solutions, and
//! contour diagnostics for the kernel estimates behind the first-order
//! convergence of the scheme.
//!
//! Module map:
//! - [`specfun`]: Gamma, Mittag-Leffler, polylogarithm
//! - [`fem1d`]: uniform mesh, P1 assembly (mass, Laplacian and
//!   Riemann-Liouville stiffness), projections, linear solvers
//! - [`l1stepper`]: L1 weights and the fully discrete time march
//! - [`reference`]: eigen-expansion exact solutions, self-reference runs,
//!   error norms, empirical rates
//! - [`kernelcheck`]: contour scans of the generating-function symbols
//! - [`quad`]: Gauss-Legendre rules and adaptive quadrature

pub mod error;
pub mod fem1d;
pub mod kernelcheck;
pub mod l1stepper;
pub mod quad;
pub mod reference;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use fem1d::{
    assemble_mass, assemble_stiff_laplace, assemble_stiff_rl, interpolate, l2_norm, l2_project,
    linear_solve, load_vector, make_mesh, ritz_project, InitialData, Mesh, OperatorKind,
    SpatialDiscretization,
};
pub use l1stepper::{l1_weights, march, solve_scalar_ode, L1Weights, SolutionHistory, TimeGrid};
pub use reference::{
    eigen_expansion, eigen_expansion_auto, empirical_rates, error_at, exact_subdiffusion,
    self_reference, sine_coefficients, ConvergenceReport, EigenExpansion, Sweep,
};
pub use specfun::{gamma, mittag_leffler, polylog, MlParams};
