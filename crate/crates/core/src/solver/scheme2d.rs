use std::sync::Arc;

use crate::mesh::{Grid2D, MeshError};
use crate::models::{ConservationLaw2D, Edge, Edges, Problem2D, State};
use crate::rd::{distribute_2d, residuals_2d, CellDistribution, Ghosts, NodalView2D, RdError, RdParameters};

use super::{Scheme, SPEED_FLOOR};

/// Residual distribution on a uniform 2D grid with per-edge boundary policies.
///
/// A node on a Dirichlet edge is pinned, even at a corner shared with another
/// policy. A node on a reflective wall keeps its rate with the normal momentum
/// component removed.
#[derive(Clone)]
pub struct Scheme2D<const M: usize> {
    law: Arc<dyn ConservationLaw2D<M>>,
    grid: Grid2D,
    edges: Edges,
    params: RdParameters,
    duals: Vec<f64>,
    pinned: Vec<(usize, State<M>)>,
    walls: Vec<(usize, [f64; 2])>,
}

impl<const M: usize> std::fmt::Debug for Scheme2D<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scheme2D")
            .field("cells", &(self.grid.nx(), self.grid.ny()))
            .field("edges", &self.edges)
            .finish_non_exhaustive()
    }
}

impl<const M: usize> Scheme2D<M> {
    /// `boundary` supplies the pinned value of every Dirichlet node.
    pub fn new(
        law: Arc<dyn ConservationLaw2D<M>>,
        grid: Grid2D,
        edges: Edges,
        boundary: impl Fn(f64, f64) -> State<M>,
        params: RdParameters,
    ) -> Self {
        let (nx, ny) = (grid.nx(), grid.ny());
        let mut pinned = Vec::new();
        let mut walls = Vec::new();
        for j in 0..=ny {
            for i in 0..=nx {
                let touching = [
                    (i == 0, edges.left, [-1.0, 0.0]),
                    (i == nx, edges.right, [1.0, 0.0]),
                    (j == 0, edges.bottom, [0.0, -1.0]),
                    (j == ny, edges.top, [0.0, 1.0]),
                ];
                let on = |e: Edge| touching.iter().any(|&(hit, edge, _)| hit && edge == e);
                let k = grid.index(i, j);
                if on(Edge::Dirichlet) {
                    let (x, y) = grid.coords(i, j);
                    pinned.push((k, boundary(x, y)));
                } else {
                    for &(hit, edge, n) in &touching {
                        if hit && edge == Edge::Reflective {
                            walls.push((k, n));
                        }
                    }
                }
            }
        }
        Self {
            law,
            duals: grid.dual_areas(),
            grid,
            edges,
            params,
            pinned,
            walls,
        }
    }

    /// The scheme for `problem` on an `nx × ny` uniform grid, with the sampled
    /// initial condition.
    pub fn for_problem(
        problem: &Problem2D<M>,
        (nx, ny): (usize, usize),
        params: RdParameters,
    ) -> Result<(Self, Vec<State<M>>), MeshError> {
        let ((ax, bx), (ay, by)) = problem.domain;
        let grid = Grid2D::uniform((ax, bx, nx), (ay, by, ny))?;
        let mut u0 = Vec::with_capacity(grid.node_count());
        for j in 0..=ny {
            for i in 0..=nx {
                let (x, y) = grid.coords(i, j);
                u0.push((problem.initial)(x, y));
            }
        }
        let boundary = problem.boundary.clone();
        let scheme = Self::new(problem.law.clone(), grid, problem.edges, move |x, y| boundary(x, y), params);
        Ok((scheme, u0))
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn law(&self) -> &dyn ConservationLaw2D<M> {
        self.law.as_ref()
    }

    pub fn ghosts(&self) -> Ghosts {
        let wall = |e: Edge| e == Edge::Reflective;
        Ghosts {
            left: wall(self.edges.left),
            right: wall(self.edges.right),
            bottom: wall(self.edges.bottom),
            top: wall(self.edges.top),
        }
    }

    /// Total residual and vertex parts of every cell, row-major `j·nx + i`.
    pub fn distributions(&self, u: &[State<M>]) -> Result<Vec<CellDistribution<M, 4>>, RdError> {
        let view = NodalView2D::new(&self.grid, u, self.ghosts())?;
        let spacing = view.spacing();
        let mut totals = Vec::with_capacity(self.grid.nx() * self.grid.ny());
        residuals_2d(self.law.as_ref(), &view, &self.params.weno, &mut totals)?;
        let nx = self.grid.nx();
        totals
            .into_iter()
            .enumerate()
            .map(|(c, phi)| {
                let (i, j) = (c % nx, c / nx);
                let vertices = vertices(i, j);
                let states = vertices.map(|(a, b)| u[self.grid.index(a, b)]);
                let positions = vertices.map(|(a, b)| self.grid.coords(a, b));
                distribute_2d(self.law.as_ref(), states, positions, spacing, phi, &self.params)
            })
            .collect()
    }
}

/// Vertices `M1..M4` of cell `(i, j)`.
fn vertices(i: usize, j: usize) -> [(usize, usize); 4] {
    [(i + 1, j + 1), (i + 1, j), (i, j + 1), (i, j)]
}

impl<const M: usize> Scheme<M> for Scheme2D<M> {
    fn duals(&self) -> &[f64] {
        &self.duals
    }

    fn rates(&self, u: &[State<M>], out: &mut Vec<State<M>>) -> Result<(), RdError> {
        out.clear();
        out.resize(u.len(), State::<M>::zeros());
        let nx = self.grid.nx();
        for (c, d) in self.distributions(u)?.iter().enumerate() {
            for ((a, b), part) in vertices(c % nx, c / nx).into_iter().zip(&d.parts) {
                out[self.grid.index(a, b)] += part;
            }
        }
        for (r, dual) in out.iter_mut().zip(&self.duals) {
            *r /= -dual;
        }
        for &(k, n) in &self.walls {
            out[k] = (out[k] + self.law.reflect(&out[k], n)) * 0.5;
        }
        for &(k, _) in &self.pinned {
            out[k] = State::<M>::zeros();
        }
        Ok(())
    }

    fn time_step(&self, u: &[State<M>], cfl: f64) -> f64 {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let mut speed = Vec::with_capacity(u.len());
        for j in 0..=ny {
            for i in 0..=nx {
                let (x, y) = self.grid.coords(i, j);
                speed.push(self.law.max_wave_speed(&u[self.grid.index(i, j)], x, y));
            }
        }
        let (dx, dy) = (self.grid.x.width(0), self.grid.y.width(0));
        let mut local = f64::INFINITY;
        for j in 0..ny {
            for i in 0..nx {
                let s = vertices(i, j)
                    .iter()
                    .map(|&(a, b)| speed[self.grid.index(a, b)])
                    .fold(0.0, f64::max);
                let h = self.grid.x.width(i).min(self.grid.y.width(j));
                local = local.min(h / (s + SPEED_FLOOR));
            }
        }
        debug_assert!(local <= dx.min(dy) / SPEED_FLOOR);
        cfl * local
    }

    fn enforce(&self, u: &mut [State<M>]) {
        for &(k, v) in &self.pinned {
            u[k] = v;
        }
    }
}
