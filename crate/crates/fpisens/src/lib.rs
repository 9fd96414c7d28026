//! Sensitivities of fixed-point PDE solvers.
//!
//! This crate solves small steady discretized PDEs (a quasi-1D Euler nozzle
//! and a viscous Burgers channel) with explicit and quasi-Newton fixed-point
//! iterations, linearizes the recorded iteration in forward (tangent) and
//! reverse (adjoint) mode, and verifies both against a whole-process
//! complex-step oracle. The experiment harness reproduces the tolerance-sweep
//! and error-decay studies relating sensitivity error to linear-solver
//! tolerance and residual convergence.

pub mod error;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
