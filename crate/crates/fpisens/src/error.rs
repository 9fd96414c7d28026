//! Error types for the solver stack.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is singular to working precision at pivot {pivot}")]
    Singular { pivot: usize },
    #[error("zero diagonal block in Gauss-Seidel sweep at cell {cell}")]
    SingularBlock { cell: usize },
    #[error("GMRES breakdown: Arnoldi vector norm vanished at iteration {iteration}")]
    Breakdown { iteration: usize },
    #[error("dimension mismatch: matrix is {n}x{n}, vector has length {len}")]
    Dimension { n: usize, len: usize },
}

#[derive(Debug, Error)]
pub enum PhysicsError {
    #[error("non-physical state in cell {cell}: {what}")]
    NonPhysical { cell: usize, what: &'static str },
    #[error("non-physical reconstructed state at face {face}")]
    NonPhysicalFace { face: usize },
    #[error("non-physical state at Runge-Kutta stage {stage}")]
    NonPhysicalStage { stage: usize },
    #[error("non-finite residual, first offending cell {cell}")]
    NonFiniteResidual { cell: usize },
    #[error("design amplitude {value} exceeds bound {bound}")]
    DesignOutOfRange { value: f64, bound: f64 },
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("residual diverged: ||R|| grew by {factor:.3e} at iteration {iteration}")]
    Divergence { iteration: usize, factor: f64 },
    #[error("step rejected {retries} times at iteration {iteration}; CFL exhausted")]
    StepRejectionExhausted { iteration: usize, retries: usize },
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(
        "perturbed run diverged from the recorded trajectory at iteration {iteration}: {what}"
    )]
    IterationDivergence { iteration: usize, what: String },
    #[error("finite-difference runs disagree in iteration count: {plus} vs {minus}")]
    FdLengthMismatch { plus: usize, minus: usize },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("invalid value for `{key}`: {why}")]
    Invalid { key: &'static str, why: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
