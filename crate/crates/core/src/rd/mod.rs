//! Residual distribution: total residual per cell and its split among the
//! cell vertices.

use thiserror::Error;

use crate::models::ModelError;
use crate::quadrature::{QuadratureError, WenoParameters};

pub mod distribution;
pub mod limiter;
pub mod residual;

pub use distribution::{
    alpha_1d, alpha_2d, basis_gradients_2d, dissipation_1d, dissipation_2d, distribute_1d, distribute_2d, lxf_split,
    CellDistribution,
};
pub use limiter::{roe_correct, struijs_limiter, RoeFix};
pub use residual::{residuals_1d, residuals_2d, total_residual_1d, total_residual_2d, Ghosts, NodalView2D};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RdError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// How the cell-average state `ū` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AverageState {
    #[default]
    Arithmetic,
    /// Roe average where the law provides one, arithmetic otherwise.
    Roe,
}

/// Direction of the characteristic projection in 2D systems.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Direction {
    /// The law's preferred direction (flow direction for Euler).
    #[default]
    Model,
    Fixed([f64; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdParameters {
    pub weno: WenoParameters,
    pub roe: RoeFix,
    pub average: AverageState,
    pub direction: Direction,
}

impl Default for RdParameters {
    fn default() -> Self {
        Self {
            weno: WenoParameters::default(),
            roe: RoeFix::default(),
            average: AverageState::Arithmetic,
            direction: Direction::Model,
        }
    }
}
