//! Structured tensor-product grids and their dual control volumes.
//!
//! Nodes are stored explicitly even on uniform grids. The nodal update divides
//! the residual collected at node `i` by the dual measure `|C_i|`, the length
//! (or area) of the box joining the midpoints of the adjacent cells.

use thiserror::Error;

/// Minimum number of cells: the four-node WENO stencil must fit.
pub const MIN_CELLS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("grid needs at least {MIN_CELLS} cells, got {0}")]
    TooFewCells(usize),
    #[error("empty interval: upper bound {b} must exceed lower bound {a}")]
    EmptyInterval { a: f64, b: f64 },
    #[error("nodes must be strictly increasing (violated at index {0})")]
    NotIncreasing(usize),
}

/// One-dimensional grid `x_0 < x_1 < ... < x_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    nodes: Vec<f64>,
    widths: Vec<f64>,
    duals: Vec<f64>,
}

impl Grid1D {
    /// Uniform grid on `[a, b]` with `cells` cells.
    pub fn uniform(a: f64, b: f64, cells: usize) -> Result<Self, MeshError> {
        if !(b > a) {
            return Err(MeshError::EmptyInterval { a, b });
        }
        if cells < MIN_CELLS {
            return Err(MeshError::TooFewCells(cells));
        }
        let h = (b - a) / cells as f64;
        let mut nodes: Vec<f64> = (0..=cells).map(|i| a + i as f64 * h).collect();
        nodes[cells] = b;
        Self::from_nodes(nodes)
    }

    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self, MeshError> {
        if nodes.len() < MIN_CELLS + 1 {
            return Err(MeshError::TooFewCells(nodes.len().saturating_sub(1)));
        }
        for i in 1..nodes.len() {
            if !(nodes[i] > nodes[i - 1]) {
                return Err(MeshError::NotIncreasing(i));
            }
        }
        let widths: Vec<f64> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        let n = widths.len();
        let mut duals = vec![0.0; n + 1];
        duals[0] = 0.5 * widths[0];
        duals[n] = 0.5 * widths[n - 1];
        for i in 1..n {
            duals[i] = 0.5 * (widths[i - 1] + widths[i]);
        }
        Ok(Self {
            nodes,
            widths,
            duals,
        })
    }

    pub fn cells(&self) -> usize {
        self.widths.len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// `Δx_{i+1/2} = x_{i+1} - x_i`.
    pub fn width(&self, cell: usize) -> f64 {
        self.widths[cell]
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn dual_measures(&self) -> &[f64] {
        &self.duals
    }

    pub fn lower(&self) -> f64 {
        self.nodes[0]
    }

    pub fn upper(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn length(&self) -> f64 {
        self.upper() - self.lower()
    }

    /// Spacing of a uniform grid, or `None` if any two cell widths differ by
    /// more than `1e-12` of the mean width.
    pub fn uniform_spacing(&self) -> Option<f64> {
        let h = self.length() / self.cells() as f64;
        let tol = 1e-12 * h.max(1.0);
        self.widths
            .iter()
            .all(|w| (w - h).abs() <= tol)
            .then_some(h)
    }

    /// Index of the node closest to `x`.
    pub fn nearest_node(&self, x: f64) -> usize {
        let mut best = 0;
        for (i, xi) in self.nodes.iter().enumerate() {
            if (xi - x).abs() < (self.nodes[best] - x).abs() {
                best = i;
            }
        }
        best
    }
}

/// Tensor product of two axes. Node `(i, j)` sits at `(x_i, y_j)` and is stored
/// at flat index `j * (nx + 1) + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn uniform(
        (ax, bx, nx): (f64, f64, usize),
        (ay, by, ny): (f64, f64, usize),
    ) -> Result<Self, MeshError> {
        Ok(Self {
            x: Grid1D::uniform(ax, bx, nx)?,
            y: Grid1D::uniform(ay, by, ny)?,
        })
    }

    pub fn nx(&self) -> usize {
        self.x.cells()
    }

    pub fn ny(&self) -> usize {
        self.y.cells()
    }

    pub fn node_count(&self) -> usize {
        self.x.len() * self.y.len()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.x.len() + i
    }

    pub fn coords(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x.node(i), self.y.node(j))
    }

    /// `|C_ij|`: product of the axis duals, i.e. the area of the box joining
    /// the centres of the (up to four) cells around the node.
    pub fn dual_area(&self, i: usize, j: usize) -> f64 {
        self.x.dual_measures()[i] * self.y.dual_measures()[j]
    }

    pub fn dual_areas(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.node_count());
        for j in 0..self.y.len() {
            for i in 0..self.x.len() {
                out.push(self.dual_area(i, j));
            }
        }
        out
    }

    pub fn area(&self) -> f64 {
        self.x.length() * self.y.length()
    }

    pub fn uniform_spacing(&self) -> Option<(f64, f64)> {
        Some((self.x.uniform_spacing()?, self.y.uniform_spacing()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_interval_four_cells() {
        let g = Grid1D::uniform(0.0, 1.0, 4).unwrap();
        assert_eq!(g.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(g.dual_measures()[0], 0.125);
        assert_eq!(g.dual_measures()[1], 0.25);
        assert_eq!(g.dual_measures()[4], 0.125);
    }

    #[test]
    fn duals_sum_to_length() {
        let g = Grid1D::uniform(0.0, PI, 20).unwrap();
        let s: f64 = g.dual_measures().iter().sum();
        assert!((s - PI).abs() <= 1e-12 * PI);
    }

    #[test]
    fn finest_shallow_water_spacing() {
        let g = Grid1D::uniform(0.0, 10.0, 2560).unwrap();
        assert!((g.width(17) - 10.0 / 2560.0).abs() < 1e-15);
        assert_eq!(g.uniform_spacing().map(|h| (h - 10.0 / 2560.0).abs() < 1e-15), Some(true));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Grid1D::uniform(0.0, 1.0, 3), Err(MeshError::TooFewCells(3)));
        assert!(matches!(
            Grid1D::uniform(1.0, 1.0, 10),
            Err(MeshError::EmptyInterval { .. })
        ));
        assert!(matches!(
            Grid1D::uniform(2.0, 1.0, 10),
            Err(MeshError::EmptyInterval { .. })
        ));
        assert_eq!(
            Grid1D::from_nodes(vec![0.0, 1.0, 1.0, 2.0, 3.0]),
            Err(MeshError::NotIncreasing(2))
        );
    }

    #[test]
    fn nonuniform_duals() {
        let g = Grid1D::from_nodes(vec![0.0, 0.1, 0.3, 0.6, 1.0]).unwrap();
        assert!(g.uniform_spacing().is_none());
        let d = g.dual_measures();
        assert!((d[0] - 0.05).abs() < 1e-15);
        assert!((d[1] - 0.15).abs() < 1e-15);
        assert!((d[4] - 0.2).abs() < 1e-15);
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_square_dual_areas() {
        let g = Grid2D::uniform((0.0, 1.0, 4), (0.0, 1.0, 4)).unwrap();
        assert_eq!(g.dual_area(2, 1), 1.0 / 16.0);
        assert_eq!(g.dual_area(0, 2), 1.0 / 32.0);
        assert_eq!(g.dual_area(4, 4), 1.0 / 64.0);
    }

    #[test]
    fn shock_reflection_grid() {
        let g = Grid2D::uniform((0.0, 4.0, 160), (0.0, 1.0, 40)).unwrap();
        let (dx, dy) = g.uniform_spacing().unwrap();
        assert!((dx - 0.025).abs() < 1e-15 && (dy - 0.025).abs() < 1e-15);
        let total: f64 = g.dual_areas().iter().sum();
        assert!((total - 4.0).abs() <= 1e-12 * 4.0);
        assert!(g.dual_areas().iter().all(|&a| a > 0.0));
        assert_eq!(g.index(3, 2), 2 * 161 + 3);
    }
}
