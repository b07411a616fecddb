//! Driving the solver over the problem registry: configuration, runs,
//! convergence studies, diagnostics and CSV output.

use thiserror::Error;

use crate::mesh::MeshError;
use crate::models::ProblemKind;
use crate::solver::SolverError;

pub mod analysis;
pub mod config;
pub mod output;
pub mod run;

pub use analysis::{error_norms, observed_order, orders, shock_locator};
pub use config::{ConfigError, RunConfig};
pub use output::{contour_dump, read_contour, section, NodalField, OutputError};
pub use run::{convergence_study, run, solve, write_outputs, ConvergenceTable, RunOutcome, RunReport, Solution};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Output(#[from] OutputError),
    #[error("problem `{0}` has no exact solution to measure errors against")]
    MissingExact(ProblemKind),
    #[error("invalid levels: {0}")]
    Levels(String),
}

impl HarnessError {
    /// 2 for configuration errors, 3 for solver failures, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_)
            | HarnessError::Mesh(_)
            | HarnessError::MissingExact(_)
            | HarnessError::Levels(_)
            | HarnessError::Solver(SolverError::Config(_)) => 2,
            HarnessError::Solver(_) => 3,
            HarnessError::Output(_) => 4,
        }
    }
}
