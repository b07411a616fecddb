//! WENO-ZQ integration of point samples over a single cell.
//!
//! A four-node cubic interpolant and a two-node linear interpolant are both
//! integrated over the target cell. The cubic is trusted in smooth regions;
//! nonlinear weights built from smoothness indicators shift the result towards
//! the trapezoid value when the big stencil straddles a discontinuity.
//!
//! Everything here works in the local coordinate `t = (x - x_start) / Δx`, in
//! which the four stencil nodes sit at `t = 0, 1, 2, 3`. The smoothness
//! indicators are scale free in this coordinate, so they are evaluated from
//! the interpolant's Taylor coefficients in closed form.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("stencil spacing is not uniform (gaps {0:?})")]
    NonUniform([f64; 3]),
    #[error("spacing must be positive, got {0}")]
    BadSpacing(f64),
    #[error("target cell {0} is outside a four-node stencil")]
    BadTarget(usize),
    #[error("need at least 3 cells for a four-node stencil, got {0}")]
    StencilUnavailable(usize),
}

/// Linear weights and the small constant guarding the nonlinear weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoParameters {
    pub gamma1: f64,
    pub gamma2: f64,
    pub epsilon: f64,
}

impl Default for WenoParameters {
    fn default() -> Self {
        Self {
            gamma1: 0.99,
            gamma2: 0.01,
            epsilon: 1e-6,
        }
    }
}

/// Four consecutive samples and the cell (`target`, `target + 1`) to integrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSample1D {
    pub values: [f64; 4],
    pub spacing: f64,
    pub target: usize,
}

impl StencilSample1D {
    /// Samples on a grid already known to be uniform.
    pub fn uniform(values: [f64; 4], spacing: f64, target: usize) -> Result<Self, QuadratureError> {
        if !(spacing > 0.0) {
            return Err(QuadratureError::BadSpacing(spacing));
        }
        if target > 2 {
            return Err(QuadratureError::BadTarget(target));
        }
        Ok(Self {
            values,
            spacing,
            target,
        })
    }

    /// Samples at explicit coordinates; rejects spacing that is not uniform
    /// to within `1e-12 Δx`.
    pub fn from_nodes(nodes: [f64; 4], values: [f64; 4], target: usize) -> Result<Self, QuadratureError> {
        let gaps = [nodes[1] - nodes[0], nodes[2] - nodes[1], nodes[3] - nodes[2]];
        let h = (nodes[3] - nodes[0]) / 3.0;
        if gaps.iter().any(|g| (g - h).abs() > 1e-12 * h.abs()) {
            return Err(QuadratureError::NonUniform(gaps));
        }
        Self::uniform(values, h, target)
    }
}

/// Cubic integration weights (times 24) for each target cell of the stencil.
const CUBIC_WEIGHTS: [[f64; 4]; 3] = [
    [9.0, 19.0, -5.0, 1.0],
    [-1.0, 13.0, 13.0, -1.0],
    [1.0, -5.0, 19.0, 9.0],
];

/// Integral over the target cell of the cubic through all four samples.
#[inline]
pub fn integral_cubic_interpolant(st: &StencilSample1D) -> f64 {
    let w = &CUBIC_WEIGHTS[st.target];
    let s = &st.values;
    st.spacing * (w[0] * s[0] + w[1] * s[1] + w[2] * s[2] + w[3] * s[3]) / 24.0
}

/// Trapezoid value `Δx (s_i + s_{i+1}) / 2`.
#[inline]
pub fn integral_linear_interpolant(left: f64, right: f64, dx: f64) -> f64 {
    0.5 * dx * (left + right)
}

/// Polynomial on the target cell in the shifted variable `τ = t - target`,
/// `p(τ) = c[0] + c[1] τ + c[2] τ² + c[3] τ³`, `τ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellPolynomial {
    pub coeffs: [f64; 4],
    pub degree: usize,
}

impl CellPolynomial {
    /// Cubic interpolant of the stencil, expanded about the left end of the
    /// target cell.
    pub fn cubic(st: &StencilSample1D) -> Self {
        let s = &st.values;
        let d1 = s[1] - s[0];
        let d2 = s[2] - 2.0 * s[1] + s[0];
        let d3 = s[3] - 3.0 * s[2] + 3.0 * s[1] - s[0];
        let a = st.target as f64;
        let value = s[0] + d1 * a + d2 * (a * a - a) / 2.0 + d3 * (a * a * a - 3.0 * a * a + 2.0 * a) / 6.0;
        let first = d1 + d2 * (2.0 * a - 1.0) / 2.0 + d3 * (3.0 * a * a - 6.0 * a + 2.0) / 6.0;
        let second = d2 + d3 * (a - 1.0);
        Self {
            coeffs: [value, first, 0.5 * second, d3 / 6.0],
            degree: 3,
        }
    }

    /// Linear interpolant of the two target-cell samples.
    pub fn linear(st: &StencilSample1D) -> Self {
        let l = st.values[st.target];
        let r = st.values[st.target + 1];
        Self {
            coeffs: [l, r - l, 0.0, 0.0],
            degree: 1,
        }
    }

    pub fn eval(&self, tau: f64) -> f64 {
        let c = &self.coeffs;
        c[0] + tau * (c[1] + tau * (c[2] + tau * c[3]))
    }
}

/// `β = Σ_{m=1..r} ∫_cell Δx^{2m-1} (p^{(m)})² dx`, evaluated exactly.
///
/// In the local variable the powers of `Δx` cancel, so only the polynomial
/// coefficients are needed and `Δx` does not enter.
pub fn smoothness_indicator(poly: &CellPolynomial) -> f64 {
    let [_, c1, c2, c3] = poly.coeffs;
    match poly.degree {
        0 => 0.0,
        1 => c1 * c1,
        _ => {
            c1 * c1
                + 2.0 * c1 * c2
                + 2.0 * c1 * c3
                + (16.0 / 3.0) * c2 * c2
                + 15.0 * c2 * c3
                + (249.0 / 5.0) * c3 * c3
        }
    }
}

/// Nonlinear weights from `τ0 = |β1 - β2|²`.
#[inline]
pub fn nonlinear_weights(beta1: f64, beta2: f64, params: &WenoParameters) -> (f64, f64) {
    let d = beta1 - beta2;
    let tau0 = d * d;
    let w1 = params.gamma1 * (1.0 + tau0 / (params.epsilon + beta1));
    let w2 = params.gamma2 * (1.0 + tau0 / (params.epsilon + beta2));
    let omega2 = w2 / (w1 + w2);
    (1.0 - omega2, omega2)
}

/// WENO-ZQ approximation of the integral over the target cell.
#[inline]
pub fn weno_zq_cell_integral(st: &StencilSample1D, params: &WenoParameters) -> f64 {
    let q1 = integral_cubic_interpolant(st);
    let q2 = integral_linear_interpolant(st.values[st.target], st.values[st.target + 1], st.spacing);
    let beta1 = smoothness_indicator(&CellPolynomial::cubic(st));
    let beta2 = smoothness_indicator(&CellPolynomial::linear(st));
    let (omega1, omega2) = nonlinear_weights(beta1, beta2, params);
    omega1 * (q1 / params.gamma1 - params.gamma2 / params.gamma1 * q2) + omega2 * q2
}

/// Convenience wrapper for already-uniform data.
#[inline]
pub fn weno_integral(values: [f64; 4], spacing: f64, target: usize, params: &WenoParameters) -> f64 {
    weno_zq_cell_integral(
        &StencilSample1D {
            values,
            spacing,
            target,
        },
        params,
    )
}

/// Four-node stencil for cell `cell` of an axis with `cells` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stencil {
    /// Index of the first stencil node; `-1` refers to a ghost node.
    pub start: isize,
    /// Which consecutive pair of the stencil is the integration cell.
    pub target: usize,
}

impl Stencil {
    pub fn nodes(&self) -> [isize; 4] {
        [self.start, self.start + 1, self.start + 2, self.start + 3]
    }
}

/// Central stencil `{i-1, ..., i+2}` where it fits, otherwise the one-sided
/// stencil flush with the boundary.
pub fn select_stencil(cell: usize, cells: usize) -> Result<Stencil, QuadratureError> {
    if cells < 3 {
        return Err(QuadratureError::StencilUnavailable(cells));
    }
    debug_assert!(cell < cells);
    Ok(if cell == 0 {
        Stencil { start: 0, target: 0 }
    } else if cell + 1 == cells {
        Stencil {
            start: cells as isize - 3,
            target: 2,
        }
    } else {
        Stencil {
            start: cell as isize - 1,
            target: 1,
        }
    })
}

/// Like [`select_stencil`] but allows one ghost node beyond either end.
pub fn select_stencil_with_ghosts(
    cell: usize,
    cells: usize,
    ghost_low: bool,
    ghost_high: bool,
) -> Result<Stencil, QuadratureError> {
    let base = select_stencil(cell, cells)?;
    Ok(if cell == 0 && ghost_low {
        Stencil { start: -1, target: 1 }
    } else if cell + 1 == cells && ghost_high {
        Stencil {
            start: cell as isize - 1,
            target: 1,
        }
    } else {
        base
    })
}

/// Double integral over one cell, one axis at a time: WENO-ZQ in `y` along
/// each of four columns, then WENO-ZQ in `x` across the column integrals.
///
/// `samples[k][l]` is the value at column `k` and row `l` of the 4×4 block.
pub fn source_cell_integral_2d(
    samples: &[[f64; 4]; 4],
    (dx, dy): (f64, f64),
    (x_target, y_target): (usize, usize),
    params: &WenoParameters,
) -> f64 {
    let mut columns = [0.0; 4];
    for (k, col) in samples.iter().enumerate() {
        columns[k] = weno_integral(*col, dy, y_target, params);
    }
    weno_integral(columns, dx, x_target, params)
}
