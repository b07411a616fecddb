//! Total residuals `Φ = ∮ F·n − ∫ s` per cell, with WENO-ZQ quadrature for
//! the flux edge integrals and the source.
//!
//! Each dimension has a per-cell entry point and a batched version that
//! evaluates nodal fluxes and edge integrals once. Both go through the same
//! arithmetic and agree bit for bit.

use crate::mesh::{Grid1D, Grid2D};
use crate::models::{ConservationLaw1D, ConservationLaw2D, State};
use crate::quadrature::{select_stencil, select_stencil_with_ghosts, weno_integral, QuadratureError, Stencil, WenoParameters};

use super::RdError;

/// Componentwise WENO-ZQ integral over the target cell of a 4-node stencil.
pub(crate) fn weno_state<const M: usize>(
    samples: [&State<M>; 4],
    spacing: f64,
    target: usize,
    params: &WenoParameters,
) -> State<M> {
    State::<M>::from_fn(|c, _| {
        weno_integral(
            [samples[0][c], samples[1][c], samples[2][c], samples[3][c]],
            spacing,
            target,
            params,
        )
    })
}

fn uniform_spacing_1d(grid: &Grid1D) -> Result<f64, QuadratureError> {
    grid.uniform_spacing().ok_or_else(|| non_uniform(grid))
}

/// Error carrying the first three widths of a grid that is not uniform.
fn non_uniform(grid: &Grid1D) -> QuadratureError {
    let w = grid.widths();
    QuadratureError::NonUniform([0, 1, 2].map(|k| w.get(k).copied().unwrap_or(f64::NAN)))
}

/// `Φ_{i+1/2} = f(u_{i+1}) − f(u_i) − ∫ s dx` for one cell.
pub fn total_residual_1d<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    grid: &Grid1D,
    u: &[State<M>],
    cell: usize,
    params: &WenoParameters,
) -> Result<State<M>, RdError> {
    let h = uniform_spacing_1d(grid)?;
    let stencil = select_stencil(cell, grid.cells())?;
    let nodes = stencil.nodes().map(|k| k as usize);
    for &k in &nodes {
        law.check_admissible(&u[k], grid.node(k))?;
    }
    let flux_l = law.flux(&u[cell], grid.node(cell));
    let flux_r = law.flux(&u[cell + 1], grid.node(cell + 1));
    let mut phi = flux_r - flux_l;
    if law.has_source() {
        let s = nodes.map(|k| law.source(&u[k], grid.node(k)));
        phi -= weno_state([&s[0], &s[1], &s[2], &s[3]], h, stencil.target, params);
    }
    Ok(phi)
}

/// All cell residuals of a 1D state.
pub fn residuals_1d<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    grid: &Grid1D,
    u: &[State<M>],
    params: &WenoParameters,
    out: &mut Vec<State<M>>,
) -> Result<(), RdError> {
    let h = uniform_spacing_1d(grid)?;
    let cells = grid.cells();
    for (k, uk) in u.iter().enumerate() {
        law.check_admissible(uk, grid.node(k))?;
    }
    let flux: Vec<State<M>> = u.iter().enumerate().map(|(k, uk)| law.flux(uk, grid.node(k))).collect();
    let source: Option<Vec<State<M>>> = law
        .has_source()
        .then(|| u.iter().enumerate().map(|(k, uk)| law.source(uk, grid.node(k))).collect());
    out.clear();
    for cell in 0..cells {
        let mut phi = flux[cell + 1] - flux[cell];
        if let Some(s) = &source {
            let st = select_stencil(cell, cells)?;
            let n = st.nodes().map(|k| &s[k as usize]);
            phi -= weno_state(n, h, st.target, params);
        }
        out.push(phi);
    }
    Ok(())
}

/// Which edges of a rectangle are reflective walls. A wall provides one row of
/// mirrored ghost nodes to the stencils of the adjacent cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ghosts {
    pub left: bool,
    pub right: bool,
    pub bottom: bool,
    pub top: bool,
}

/// A 2D nodal state on a uniform grid together with its wall ghosts.
#[derive(Debug, Clone, Copy)]
pub struct NodalView2D<'a, const M: usize> {
    pub grid: &'a Grid2D,
    pub u: &'a [State<M>],
    pub ghosts: Ghosts,
    spacing: (f64, f64),
}

impl<'a, const M: usize> NodalView2D<'a, M> {
    pub fn new(grid: &'a Grid2D, u: &'a [State<M>], ghosts: Ghosts) -> Result<Self, QuadratureError> {
        let spacing = (uniform_spacing_1d(&grid.x)?, uniform_spacing_1d(&grid.y)?);
        Ok(Self {
            grid,
            u,
            ghosts,
            spacing,
        })
    }

    pub fn spacing(&self) -> (f64, f64) {
        self.spacing
    }

    fn stencil_x(&self, i: usize) -> Result<Stencil, QuadratureError> {
        select_stencil_with_ghosts(i, self.grid.nx(), self.ghosts.left, self.ghosts.right)
    }

    fn stencil_y(&self, j: usize) -> Result<Stencil, QuadratureError> {
        select_stencil_with_ghosts(j, self.grid.ny(), self.ghosts.bottom, self.ghosts.top)
    }

    /// State and position of node `(i, j)`, mirroring across walls for
    /// indices one step outside the grid.
    pub fn sample<L: ConservationLaw2D<M> + ?Sized>(&self, law: &L, i: isize, j: isize) -> (State<M>, f64, f64) {
        let nx = self.grid.nx() as isize;
        let ny = self.grid.ny() as isize;
        let (ii, mirror_x) = mirror_index(i, nx);
        let (jj, mirror_y) = mirror_index(j, ny);
        let mut w = self.u[self.grid.index(ii, jj)];
        let (mut x, mut y) = self.grid.coords(ii, jj);
        if let Some(edge) = mirror_x {
            w = law.reflect(&w, [1.0, 0.0]);
            x = 2.0 * self.grid.x.node(edge) - x;
        }
        if let Some(edge) = mirror_y {
            w = law.reflect(&w, [0.0, 1.0]);
            y = 2.0 * self.grid.y.node(edge) - y;
        }
        (w, x, y)
    }
}

/// Index inside `[0, n]` and, for a mirrored index, the wall it was mirrored across.
fn mirror_index(i: isize, n: isize) -> (usize, Option<usize>) {
    if i < 0 {
        ((-i) as usize, Some(0))
    } else if i > n {
        ((2 * n - i) as usize, Some(n as usize))
    } else {
        (i as usize, None)
    }
}

/// Total residual of cell `(i, j)`: WENO-ZQ edge integrals of `f` and `g`
/// minus the dimension-by-dimension source integral.
pub fn total_residual_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    view: &NodalView2D<'_, M>,
    (i, j): (usize, usize),
    params: &WenoParameters,
) -> Result<State<M>, RdError> {
    let (dx, dy) = view.spacing;
    let sx = view.stencil_x(i)?;
    let sy = view.stencil_y(j)?;
    let sample = |a: isize, b: isize| -> Result<(State<M>, f64, f64), RdError> {
        let (w, x, y) = view.sample(law, a, b);
        law.check_admissible(&w, x, y)?;
        Ok((w, x, y))
    };
    let (ii, jj) = (i as isize, j as isize);

    let mut edge_f = [State::<M>::zeros(); 2];
    for (e, col) in [ii, ii + 1].into_iter().enumerate() {
        let mut f = [State::<M>::zeros(); 4];
        for (l, fl) in f.iter_mut().enumerate() {
            let (w, x, y) = sample(col, sy.start + l as isize)?;
            *fl = law.flux_x(&w, x, y);
        }
        edge_f[e] = weno_state([&f[0], &f[1], &f[2], &f[3]], dy, sy.target, params);
    }
    let mut edge_g = [State::<M>::zeros(); 2];
    for (e, row) in [jj, jj + 1].into_iter().enumerate() {
        let mut g = [State::<M>::zeros(); 4];
        for (k, gk) in g.iter_mut().enumerate() {
            let (w, x, y) = sample(sx.start + k as isize, row)?;
            *gk = law.flux_y(&w, x, y);
        }
        edge_g[e] = weno_state([&g[0], &g[1], &g[2], &g[3]], dx, sx.target, params);
    }
    let mut phi = (edge_f[1] - edge_f[0]) + (edge_g[1] - edge_g[0]);
    if law.has_source() {
        let mut columns = [State::<M>::zeros(); 4];
        for (k, ck) in columns.iter_mut().enumerate() {
            let mut s = [State::<M>::zeros(); 4];
            for (l, sl) in s.iter_mut().enumerate() {
                let (w, x, y) = sample(sx.start + k as isize, sy.start + l as isize)?;
                *sl = law.source(&w, x, y);
            }
            *ck = weno_state([&s[0], &s[1], &s[2], &s[3]], dy, sy.target, params);
        }
        phi -= weno_state([&columns[0], &columns[1], &columns[2], &columns[3]], dx, sx.target, params);
    }
    Ok(phi)
}

/// Row-major array over nodes `i ∈ [-lo_x, nx + hi_x]`, `j ∈ [-lo_y, ny + hi_y]`.
struct Extended<T> {
    data: Vec<T>,
    lo_x: isize,
    lo_y: isize,
    width: usize,
}

impl<T: Copy> Extended<T> {
    #[inline]
    fn at(&self, i: isize, j: isize) -> T {
        self.data[((j + self.lo_y) as usize) * self.width + (i + self.lo_x) as usize]
    }
}

/// All cell residuals of a 2D state, row-major over cells (`j * nx + i`).
pub fn residuals_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    view: &NodalView2D<'_, M>,
    params: &WenoParameters,
    out: &mut Vec<State<M>>,
) -> Result<(), RdError> {
    let (dx, dy) = view.spacing;
    let nx = view.grid.nx();
    let ny = view.grid.ny();
    let g = view.ghosts;
    let (lo_x, hi_x) = (g.left as isize, g.right as isize);
    let (lo_y, hi_y) = (g.bottom as isize, g.top as isize);
    let width = (nx as isize + 1 + lo_x + hi_x) as usize;
    let height = (ny as isize + 1 + lo_y + hi_y) as usize;

    let with_source = law.has_source();
    let mut f = Vec::with_capacity(width * height);
    let mut gy = Vec::with_capacity(width * height);
    let mut s = Vec::with_capacity(if with_source { width * height } else { 0 });
    for j in -lo_y..=(ny as isize + hi_y) {
        for i in -lo_x..=(nx as isize + hi_x) {
            let (w, x, y) = view.sample(law, i, j);
            law.check_admissible(&w, x, y)?;
            f.push(law.flux_x(&w, x, y));
            gy.push(law.flux_y(&w, x, y));
            if with_source {
                s.push(law.source(&w, x, y));
            }
        }
    }
    let ext = |data: Vec<State<M>>| Extended {
        data,
        lo_x,
        lo_y,
        width,
    };
    let f = ext(f);
    let gy = ext(gy);
    let s = ext(s);

    let stencils_x: Vec<Stencil> = (0..nx).map(|i| view.stencil_x(i)).collect::<Result<_, _>>()?;
    let stencils_y: Vec<Stencil> = (0..ny).map(|j| view.stencil_y(j)).collect::<Result<_, _>>()?;

    // ∫ f dy along vertical edges: column c, cell row j.
    let mut vertical = Vec::with_capacity((nx + 1) * ny);
    for j in 0..ny {
        let sy = stencils_y[j];
        for c in 0..=nx as isize {
            let v = [0, 1, 2, 3].map(|l| f.at(c, sy.start + l));
            vertical.push(weno_state([&v[0], &v[1], &v[2], &v[3]], dy, sy.target, params));
        }
    }
    // ∫ g dx along horizontal edges: row r, cell column i.
    let mut horizontal = Vec::with_capacity(nx * (ny + 1));
    for r in 0..=ny as isize {
        for sx in &stencils_x {
            let v = [0, 1, 2, 3].map(|k| gy.at(sx.start + k, r));
            horizontal.push(weno_state([&v[0], &v[1], &v[2], &v[3]], dx, sx.target, params));
        }
    }
    // ∫ s dy along every (extended) column for each cell row.
    let src_cols = if with_source {
        let mut cols = Vec::with_capacity(width * ny);
        for j in 0..ny {
            let sy = stencils_y[j];
            for c in -lo_x..=(nx as isize + hi_x) {
                let v = [0, 1, 2, 3].map(|l| s.at(c, sy.start + l));
                cols.push(weno_state([&v[0], &v[1], &v[2], &v[3]], dy, sy.target, params));
            }
        }
        cols
    } else {
        Vec::new()
    };

    out.clear();
    for j in 0..ny {
        for (i, sx) in stencils_x.iter().enumerate() {
            let fl = &vertical[j * (nx + 1) + i];
            let fr = &vertical[j * (nx + 1) + i + 1];
            let gb = &horizontal[j * nx + i];
            let gt = &horizontal[(j + 1) * nx + i];
            let mut phi = (fr - fl) + (gt - gb);
            if with_source {
                let col = |k: isize| &src_cols[j * width + (sx.start + k + lo_x) as usize];
                phi -= weno_state([col(0), col(1), col(2), col(3)], dx, sx.target, params);
            }
            out.push(phi);
        }
    }
    Ok(())
}
