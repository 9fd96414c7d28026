//! Scalar-generic linear algebra: matrix storage, direct and iterative solves,
//! Gauss-Seidel sweeps and their exact duals.

pub mod gauss_seidel;
pub mod gmres;
pub mod lu;
pub mod matrix;

pub use gauss_seidel::{gauss_seidel_dual_sweeps, gauss_seidel_sweeps};
pub use gmres::{gmres_solve, LinearSolveResult};
pub use matrix::{BlockBanded, DenseMat, Matrix};

use crate::error::LinalgError;
use crate::scalar::{re_norm, Scalar};
use serde::{Deserialize, Serialize};

/// Which linear solver backs a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearMethod {
    Gmres,
    GaussSeidelFixedSweeps,
    DirectDense,
}

/// Configuration shared by every linear solve in the crate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinearSolveConfig {
    pub method: LinearMethod,
    /// Relative residual target (GMRES only), in (0, 1).
    pub rel_tolerance: f64,
    pub max_iterations: usize,
    /// Restart length (GMRES only).
    pub restart: usize,
    /// Sweep count for the fixed-sweep Gauss-Seidel method.
    pub n_sweeps: usize,
    /// Gauss-Seidel sweeps used as a flexible right preconditioner; 0 = none.
    pub precond_sweeps: usize,
}

impl Default for LinearSolveConfig {
    fn default() -> Self {
        LinearSolveConfig {
            method: LinearMethod::Gmres,
            rel_tolerance: 1e-10,
            max_iterations: 600,
            restart: 60,
            n_sweeps: 5,
            precond_sweeps: 0,
        }
    }
}

impl LinearSolveConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance < 1.0) {
            return Err(format!(
                "rel_tolerance must lie in (0, 1), got {}",
                self.rel_tolerance
            ));
        }
        if self.restart < 1 {
            return Err("restart must be >= 1".into());
        }
        if self.n_sweeps < 1 {
            return Err("n_sweeps must be >= 1".into());
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.rel_tolerance = tol;
        self
    }
}

fn result_from_solution<S: Scalar>(
    a: &Matrix<S>,
    b: &[S],
    solution: Vec<S>,
    iterations_used: usize,
) -> LinearSolveResult<S> {
    let bn = re_norm(b);
    let achieved = if bn == 0.0 {
        0.0
    } else {
        re_norm(&a.residual_of(&solution, b)) / bn
    };
    LinearSolveResult {
        solution,
        achieved_rel_residual: achieved,
        iterations_used,
        residual_history: vec![achieved],
    }
}

/// Solve `A x = b` with the configured method.
pub fn solve_linear<S: Scalar>(
    a: &Matrix<S>,
    b: &[S],
    cfg: &LinearSolveConfig,
) -> Result<LinearSolveResult<S>, LinalgError> {
    match cfg.method {
        LinearMethod::Gmres => gmres_solve(a, b, cfg),
        LinearMethod::GaussSeidelFixedSweeps => {
            let x = gauss_seidel_sweeps(a, b, cfg.n_sweeps)?;
            Ok(result_from_solution(a, b, x, cfg.n_sweeps))
        }
        LinearMethod::DirectDense => {
            let x = lu::solve_dense(&a.to_dense(), b)?;
            Ok(result_from_solution(a, b, x, 1))
        }
    }
}

/// Solve `A^T x = b` with the dual of the configured method: the transposed
/// matrix for GMRES/direct, the exact dual sweep operator for Gauss-Seidel.
pub fn solve_linear_dual<S: Scalar>(
    a: &Matrix<S>,
    b: &[S],
    cfg: &LinearSolveConfig,
) -> Result<LinearSolveResult<S>, LinalgError> {
    match cfg.method {
        LinearMethod::Gmres => gmres_solve(&a.transpose(), b, cfg),
        LinearMethod::GaussSeidelFixedSweeps => {
            let x = gauss_seidel_dual_sweeps(a, b, cfg.n_sweeps)?;
            let at = a.transpose();
            Ok(result_from_solution(&at, b, x, cfg.n_sweeps))
        }
        LinearMethod::DirectDense => {
            let x = lu::solve_dense(&a.transpose().to_dense(), b)?;
            let at = a.transpose();
            Ok(result_from_solution(&at, b, x, 1))
        }
    }
}

pub fn direct_dense_solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>, LinalgError> {
    a.check_len(b.len())?;
    lu::solve_dense(&a.to_dense(), b)
}
