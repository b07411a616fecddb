//! Conservation-law descriptors: fluxes, sources, eigen-structure of the flux
//! Jacobian and the benchmark problems built from them.
//!
//! Every evaluation takes the node position because some fluxes depend on it
//! (the self-similar Cauchy–Riemann form). Laws that do not care ignore it.

use nalgebra::{SMatrix, SVector};
use thiserror::Error;

pub mod burgers;
pub mod cauchy_riemann;
pub mod euler;
pub mod nozzle;
pub mod problems;
pub mod shallow_water;

pub use problems::{registry_lookup, BenchmarkProblem, Boundary1D, Edge, Edges, Problem1D, Problem2D, ProblemKind, PROBLEM_NAMES};

pub type State<const M: usize> = SVector<f64, M>;
pub type Matrix<const M: usize> = SMatrix<f64, M, M>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("inadmissible state {state:?} at {position:?}: {reason}")]
    Inadmissible {
        state: Vec<f64>,
        position: Vec<f64>,
        reason: &'static str,
    },
    #[error("flux Jacobian is not diagonalizable at {state:?}")]
    Degenerate { state: Vec<f64> },
}

impl ModelError {
    pub fn inadmissible<const M: usize>(u: &State<M>, position: &[f64], reason: &'static str) -> Self {
        ModelError::Inadmissible {
            state: u.iter().copied().collect(),
            position: position.to_vec(),
            reason,
        }
    }
}

/// `J = R diag(Λ) L` with `L = R⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen<const M: usize> {
    pub left: Matrix<M>,
    pub values: State<M>,
    pub right: Matrix<M>,
}

impl<const M: usize> Eigen<M> {
    pub fn scalar(value: f64) -> Self {
        Self {
            left: Matrix::<M>::identity(),
            values: State::<M>::from_element(value),
            right: Matrix::<M>::identity(),
        }
    }

    /// Reassembles `R diag(Λ) L`.
    pub fn matrix(&self) -> Matrix<M> {
        self.right * Matrix::<M>::from_diagonal(&self.values) * self.left
    }

    /// `R diag(h(λ)) L` for an arbitrary function of the eigenvalues.
    pub fn map_matrix(&self, h: impl Fn(f64) -> f64) -> Matrix<M> {
        self.right * Matrix::<M>::from_diagonal(&self.values.map(h)) * self.left
    }
}

pub trait ConservationLaw1D<const M: usize>: Send + Sync {
    fn flux(&self, u: &State<M>, x: f64) -> State<M>;

    fn source(&self, _u: &State<M>, _x: f64) -> State<M> {
        State::<M>::zeros()
    }

    fn has_source(&self) -> bool {
        true
    }

    /// Eigen-decomposition of `f'(u)`.
    fn eigen(&self, u: &State<M>, x: f64) -> Result<Eigen<M>, ModelError>;

    /// Spectral radius of `f'(u)`.
    fn max_wave_speed(&self, u: &State<M>, x: f64) -> f64;

    fn check_admissible(&self, _u: &State<M>, _x: f64) -> Result<(), ModelError> {
        Ok(())
    }

    /// Roe-averaged state between two nodes, if the law defines one.
    fn roe_average(&self, _states: &[State<M>]) -> Option<State<M>> {
        None
    }
}

pub trait ConservationLaw2D<const M: usize>: Send + Sync {
    fn flux_x(&self, u: &State<M>, x: f64, y: f64) -> State<M>;
    fn flux_y(&self, u: &State<M>, x: f64, y: f64) -> State<M>;

    fn source(&self, _u: &State<M>, _x: f64, _y: f64) -> State<M> {
        State::<M>::zeros()
    }

    fn has_source(&self) -> bool {
        true
    }

    /// Eigen-decomposition of `n_x f'(u) + n_y g'(u)`. `n` need not be a unit
    /// vector; the eigenvalues scale with `|n|`.
    fn eigen_in_direction(&self, u: &State<M>, n: [f64; 2], x: f64, y: f64) -> Result<Eigen<M>, ModelError>;

    /// Largest `|λ|` of the directional Jacobian over unit directions.
    fn max_wave_speed(&self, u: &State<M>, x: f64, y: f64) -> f64;

    /// `ρ(f'(u)) + ρ(g'(u))`, the speed used in the Lax–Friedrichs split.
    fn lxf_speed(&self, u: &State<M>, x: f64, y: f64) -> f64;

    /// Default direction for the characteristic projection at `ū`.
    fn characteristic_direction(&self, _u: &State<M>, _x: f64, _y: f64) -> [f64; 2] {
        [1.0, 0.0]
    }

    /// State mirrored across a wall with unit normal `n`.
    fn reflect(&self, u: &State<M>, _n: [f64; 2]) -> State<M> {
        *u
    }

    fn check_admissible(&self, _u: &State<M>, _x: f64, _y: f64) -> Result<(), ModelError> {
        Ok(())
    }

    fn roe_average(&self, _states: &[State<M>]) -> Option<State<M>> {
        None
    }
}

/// Flux with an admissibility check first.
pub fn flux_eval<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    u: &State<M>,
    x: f64,
) -> Result<State<M>, ModelError> {
    law.check_admissible(u, x)?;
    Ok(law.flux(u, x))
}

pub fn source_eval<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    u: &State<M>,
    x: f64,
) -> Result<State<M>, ModelError> {
    law.check_admissible(u, x)?;
    Ok(law.source(u, x))
}

pub fn flux_eval_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    u: &State<M>,
    x: f64,
    y: f64,
) -> Result<(State<M>, State<M>), ModelError> {
    law.check_admissible(u, x, y)?;
    Ok((law.flux_x(u, x, y), law.flux_y(u, x, y)))
}

pub fn eigen_eval<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    u: &State<M>,
    x: f64,
) -> Result<Eigen<M>, ModelError> {
    law.check_admissible(u, x)?;
    law.eigen(u, x)
}

pub fn eigen_eval_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    u: &State<M>,
    n: [f64; 2],
    x: f64,
    y: f64,
) -> Result<Eigen<M>, ModelError> {
    law.check_admissible(u, x, y)?;
    law.eigen_in_direction(u, n, x, y)
}

/// Central-difference Jacobian of `flux`, used to check the eigen-structure.
pub fn fd_jacobian<const M: usize>(flux: impl Fn(&State<M>) -> State<M>, u: &State<M>) -> Matrix<M> {
    let mut jac = Matrix::<M>::zeros();
    for c in 0..M {
        let h = 1e-6 * u[c].abs().max(1.0);
        let mut up = *u;
        let mut dn = *u;
        up[c] += h;
        dn[c] -= h;
        let col = (flux(&up) - flux(&dn)) / (2.0 * h);
        jac.set_column(c, &col);
    }
    jac
}
