use std::sync::Arc;

use crate::mesh::{Grid1D, MeshError};
use crate::models::{Boundary1D, ConservationLaw1D, Problem1D, State};
use crate::rd::{distribute_1d, residuals_1d, CellDistribution, RdError, RdParameters};

use super::{Scheme, SPEED_FLOOR};

/// Residual distribution on a 1D grid with a boundary policy at each end.
#[derive(Clone)]
pub struct Scheme1D<const M: usize> {
    law: Arc<dyn ConservationLaw1D<M>>,
    grid: Grid1D,
    left: Boundary1D<M>,
    right: Boundary1D<M>,
    params: RdParameters,
}

impl<const M: usize> std::fmt::Debug for Scheme1D<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scheme1D")
            .field("cells", &self.grid.cells())
            .field("left", &self.left)
            .field("right", &self.right)
            .finish_non_exhaustive()
    }
}

impl<const M: usize> Scheme1D<M> {
    pub fn new(
        law: Arc<dyn ConservationLaw1D<M>>,
        grid: Grid1D,
        left: Boundary1D<M>,
        right: Boundary1D<M>,
        params: RdParameters,
    ) -> Self {
        Self {
            law,
            grid,
            left,
            right,
            params,
        }
    }

    /// The scheme for `problem` on `cells` uniform cells, with the sampled
    /// initial condition.
    pub fn for_problem(
        problem: &Problem1D<M>,
        cells: usize,
        params: RdParameters,
    ) -> Result<(Self, Vec<State<M>>), MeshError> {
        let grid = Grid1D::uniform(problem.domain.0, problem.domain.1, cells)?;
        let u0 = grid.nodes().iter().map(|&x| (problem.initial)(x)).collect();
        let scheme = Self::new(problem.law.clone(), grid, problem.left, problem.right, params);
        Ok((scheme, u0))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn law(&self) -> &dyn ConservationLaw1D<M> {
        self.law.as_ref()
    }

    /// Total residual and vertex parts of every cell.
    pub fn distributions(&self, u: &[State<M>]) -> Result<Vec<CellDistribution<M, 2>>, RdError> {
        let mut totals = Vec::with_capacity(self.grid.cells());
        residuals_1d(self.law.as_ref(), &self.grid, u, &self.params.weno, &mut totals)?;
        totals
            .into_iter()
            .enumerate()
            .map(|(c, phi)| {
                let x = (self.grid.node(c), self.grid.node(c + 1));
                distribute_1d(self.law.as_ref(), [u[c], u[c + 1]], x, phi, &self.params)
            })
            .collect()
    }

    fn pinned(&self) -> [Option<State<M>>; 2] {
        [self.left, self.right].map(|b| match b {
            Boundary1D::Dirichlet(v) => Some(v),
            Boundary1D::Outflow => None,
        })
    }
}

impl<const M: usize> Scheme<M> for Scheme1D<M> {
    fn duals(&self) -> &[f64] {
        self.grid.dual_measures()
    }

    fn rates(&self, u: &[State<M>], out: &mut Vec<State<M>>) -> Result<(), RdError> {
        out.clear();
        out.resize(u.len(), State::<M>::zeros());
        for (c, d) in self.distributions(u)?.iter().enumerate() {
            out[c] += d.parts[0];
            out[c + 1] += d.parts[1];
        }
        for (r, dual) in out.iter_mut().zip(self.grid.dual_measures()) {
            *r /= -dual;
        }
        let last = u.len() - 1;
        let [left, right] = self.pinned();
        if left.is_some() {
            out[0] = State::<M>::zeros();
        }
        if right.is_some() {
            out[last] = State::<M>::zeros();
        }
        Ok(())
    }

    fn time_step(&self, u: &[State<M>], cfl: f64) -> f64 {
        let speed: Vec<f64> = u
            .iter()
            .zip(self.grid.nodes())
            .map(|(w, &x)| self.law.max_wave_speed(w, x))
            .collect();
        let local = (0..self.grid.cells())
            .map(|c| self.grid.width(c) / (speed[c].max(speed[c + 1]) + SPEED_FLOOR))
            .fold(f64::INFINITY, f64::min);
        cfl * local
    }

    fn enforce(&self, u: &mut [State<M>]) {
        let last = u.len() - 1;
        let [left, right] = self.pinned();
        if let Some(v) = left {
            u[0] = v;
        }
        if let Some(v) = right {
            u[last] = v;
        }
    }
}
