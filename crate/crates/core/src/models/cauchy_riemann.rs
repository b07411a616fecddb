//! Self-similar form of the Cauchy–Riemann Riemann problem.
//!
//! With `ξ = x/t`, `η = y/t` the solution `W(ξ, η)` of
//! `W_t + A W_x + B W_y = 0`, `A = diag(1, -1)`, `B = [[0, 1], [1, 0]]`,
//! satisfies `∂_ξ[(-ξI + A)W] + ∂_η[(-ηI + B)W] = -2W`, a steady problem
//! with position-dependent flux.

use super::{ConservationLaw2D, Eigen, Matrix, ModelError, State};

/// Quadrant data, ordered NE, NW, SW, SE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrantData {
    pub quadrants: [State<2>; 4],
}

impl Default for QuadrantData {
    fn default() -> Self {
        Self {
            quadrants: [
                State::<2>::new(1.0, 1.0),
                State::<2>::new(-1.0, -1.0),
                State::<2>::new(1.0, 2.0),
                State::<2>::new(-1.0, -1.0),
            ],
        }
    }
}

const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

fn step(s: f64) -> f64 {
    if s > 0.0 {
        1.0
    } else {
        0.0
    }
}

impl QuadrantData {
    pub fn quadrant_of(x: f64, y: f64) -> usize {
        match (x >= 0.0, y >= 0.0) {
            (true, true) => NE,
            (false, true) => NW,
            (false, false) => SW,
            (true, false) => SE,
        }
    }

    /// Superposition of planar waves at `t = 1`.
    ///
    /// The quadrant diagonally opposite the point is replaced by the value that
    /// removes the corner interaction, so the data splits into one `x`-jump
    /// and one `y`-jump. Outside the unit disk this is the exact solution, as
    /// the domain of dependence never reaches the opposite quadrant.
    pub fn planar_solution(&self, xi: f64, eta: f64) -> State<2> {
        let mut q = self.quadrants;
        let own = Self::quadrant_of(xi, eta);
        let opp = (own + 2) % 4;
        q[opp] = q[(opp + 1) % 4] + q[(opp + 3) % 4] - q[own];
        let a = q[SW];
        let b = q[SE] - q[SW];
        let c = q[NW] - q[SW];
        // A: u moves right, v moves left. B: (1, 1) moves up, (1, -1) moves down.
        let alpha = 0.5 * (c[0] + c[1]);
        let beta = 0.5 * (c[0] - c[1]);
        let x_part = State::<2>::new(b[0] * step(xi - 1.0), b[1] * step(xi + 1.0));
        let y_part = State::<2>::new(1.0, 1.0) * alpha * step(eta - 1.0) + State::<2>::new(1.0, -1.0) * beta * step(eta + 1.0);
        a + x_part + y_part
    }

    /// Exact steady field, known only outside the unit disk.
    pub fn exact(&self, xi: f64, eta: f64) -> Option<State<2>> {
        (xi.hypot(eta) > 1.0).then(|| self.planar_solution(xi, eta))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CauchyRiemann;

impl ConservationLaw2D<2> for CauchyRiemann {
    fn flux_x(&self, w: &State<2>, x: f64, _y: f64) -> State<2> {
        State::<2>::new((1.0 - x) * w[0], (-1.0 - x) * w[1])
    }

    fn flux_y(&self, w: &State<2>, _x: f64, y: f64) -> State<2> {
        State::<2>::new(-y * w[0] + w[1], w[0] - y * w[1])
    }

    fn source(&self, w: &State<2>, _x: f64, _y: f64) -> State<2> {
        -2.0 * w
    }

    /// `n_x A + n_y B` is a scaled reflection with eigenvalues `±|n|`; the
    /// position term shifts both by `-(n·p)`.
    fn eigen_in_direction(&self, _w: &State<2>, n: [f64; 2], x: f64, y: f64) -> Result<Eigen<2>, ModelError> {
        let len = n[0].hypot(n[1]);
        let theta = if len > 0.0 { n[1].atan2(n[0]) } else { 0.0 };
        let (s, c) = (0.5 * theta).sin_cos();
        let right = Matrix::<2>::new(c, -s, s, c);
        let shift = n[0] * x + n[1] * y;
        Ok(Eigen {
            left: right.transpose(),
            values: State::<2>::new(len - shift, -len - shift),
            right,
        })
    }

    fn max_wave_speed(&self, _w: &State<2>, x: f64, y: f64) -> f64 {
        1.0 + x.hypot(y)
    }

    fn lxf_speed(&self, _w: &State<2>, x: f64, y: f64) -> f64 {
        2.0 + x.abs() + y.abs()
    }
}
