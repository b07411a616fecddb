//! Compressible Euler equations for a γ-law gas, in one and two dimensions.

use super::{ConservationLaw1D, ConservationLaw2D, Eigen, Matrix, ModelError, State};

pub const GAMMA: f64 = 1.4;

/// `(ρ, ρu, E)` from primitive `(ρ, u, p)`.
pub fn conservative_1d(gamma: f64, rho: f64, u: f64, p: f64) -> State<3> {
    State::<3>::new(rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u)
}

/// `(ρ, ρu, ρv, E)` from primitive `(ρ, u, v, p)`.
pub fn conservative_2d(gamma: f64, rho: f64, u: f64, v: f64, p: f64) -> State<4> {
    State::<4>::new(rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v))
}

pub fn pressure_1d(gamma: f64, w: &State<3>) -> f64 {
    (gamma - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0])
}

pub fn pressure_2d(gamma: f64, w: &State<4>) -> f64 {
    (gamma - 1.0) * (w[3] - 0.5 * (w[1] * w[1] + w[2] * w[2]) / w[0])
}

fn admissible<const M: usize>(u: &State<M>, p: f64, position: &[f64]) -> Result<(), ModelError> {
    if !u.iter().all(|v| v.is_finite()) {
        return Err(ModelError::inadmissible(u, position, "non-finite state"));
    }
    if !(u[0] > 0.0) {
        return Err(ModelError::inadmissible(u, position, "density must be positive"));
    }
    if !(p > 0.0) {
        return Err(ModelError::inadmissible(u, position, "pressure must be positive"));
    }
    Ok(())
}

/// 1D Euler, state `(ρ, ρu, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler1D {
    pub gamma: f64,
}

impl Default for Euler1D {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

impl Euler1D {
    pub fn pressure(&self, w: &State<3>) -> f64 {
        pressure_1d(self.gamma, w)
    }

    pub fn sound_speed(&self, w: &State<3>) -> f64 {
        (self.gamma * self.pressure(w).max(0.0) / w[0]).sqrt()
    }

    pub(crate) fn flux_impl(&self, w: &State<3>) -> State<3> {
        let u = w[1] / w[0];
        let p = self.pressure(w);
        State::<3>::new(w[1], w[1] * u + p, u * (w[2] + p))
    }

    pub(crate) fn eigen_impl(&self, w: &State<3>, x: f64) -> Result<Eigen<3>, ModelError> {
        let p = self.pressure(w);
        admissible(w, p, &[x])?;
        let g1 = self.gamma - 1.0;
        let u = w[1] / w[0];
        let c = (self.gamma * p / w[0]).sqrt();
        let h = (w[2] + p) / w[0];
        let right = Matrix::<3>::new(
            1.0, 1.0, 1.0, //
            u - c, u, u + c, //
            h - u * c, 0.5 * u * u, h + u * c,
        );
        let b1 = g1 / (c * c);
        let b2 = 0.5 * b1 * u * u;
        let left = Matrix::<3>::new(
            0.5 * (b2 + u / c), 0.5 * (-b1 * u - 1.0 / c), 0.5 * b1, //
            1.0 - b2, b1 * u, -b1, //
            0.5 * (b2 - u / c), 0.5 * (-b1 * u + 1.0 / c), 0.5 * b1,
        );
        Ok(Eigen {
            left,
            values: State::<3>::new(u - c, u, u + c),
            right,
        })
    }

    pub(crate) fn roe_average_impl(&self, states: &[State<3>]) -> Option<State<3>> {
        let mut wsum = 0.0;
        let (mut u, mut h) = (0.0, 0.0);
        for w in states {
            if !(w[0] > 0.0) {
                return None;
            }
            let s = w[0].sqrt();
            wsum += s;
            u += s * w[1] / w[0];
            h += s * (w[2] + self.pressure(w)) / w[0];
        }
        let (u, h) = (u / wsum, h / wsum);
        let rho = (wsum / states.len() as f64).powi(2);
        // E = ρ(H + (γ-1)u²/2)/γ from H = (E + p)/ρ
        let e = rho * (h + 0.5 * (self.gamma - 1.0) * u * u) / self.gamma;
        Some(State::<3>::new(rho, rho * u, e))
    }
}

impl ConservationLaw1D<3> for Euler1D {
    fn flux(&self, w: &State<3>, _x: f64) -> State<3> {
        self.flux_impl(w)
    }

    fn has_source(&self) -> bool {
        false
    }

    fn eigen(&self, w: &State<3>, x: f64) -> Result<Eigen<3>, ModelError> {
        self.eigen_impl(w, x)
    }

    fn max_wave_speed(&self, w: &State<3>, _x: f64) -> f64 {
        (w[1] / w[0]).abs() + self.sound_speed(w)
    }

    fn check_admissible(&self, w: &State<3>, x: f64) -> Result<(), ModelError> {
        admissible(w, self.pressure(w), &[x])
    }

    fn roe_average(&self, states: &[State<3>]) -> Option<State<3>> {
        self.roe_average_impl(states)
    }
}

/// 2D Euler, state `(ρ, ρu, ρv, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler2D {
    pub gamma: f64,
}

impl Default for Euler2D {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

impl Euler2D {
    pub fn pressure(&self, w: &State<4>) -> f64 {
        pressure_2d(self.gamma, w)
    }

    pub fn sound_speed(&self, w: &State<4>) -> f64 {
        (self.gamma * self.pressure(w).max(0.0) / w[0]).sqrt()
    }
}

impl ConservationLaw2D<4> for Euler2D {
    fn flux_x(&self, w: &State<4>, _x: f64, _y: f64) -> State<4> {
        let u = w[1] / w[0];
        let p = self.pressure(w);
        State::<4>::new(w[1], w[1] * u + p, w[2] * u, u * (w[3] + p))
    }

    fn flux_y(&self, w: &State<4>, _x: f64, _y: f64) -> State<4> {
        let v = w[2] / w[0];
        let p = self.pressure(w);
        State::<4>::new(w[2], w[1] * v, w[2] * v + p, v * (w[3] + p))
    }

    fn has_source(&self) -> bool {
        false
    }

    fn eigen_in_direction(&self, w: &State<4>, n: [f64; 2], x: f64, y: f64) -> Result<Eigen<4>, ModelError> {
        let p = self.pressure(w);
        admissible(w, p, &[x, y])?;
        let len = n[0].hypot(n[1]);
        let (nx, ny) = if len > 0.0 { (n[0] / len, n[1] / len) } else { (1.0, 0.0) };
        let g1 = self.gamma - 1.0;
        let u = w[1] / w[0];
        let v = w[2] / w[0];
        let c = (self.gamma * p / w[0]).sqrt();
        let h = (w[3] + p) / w[0];
        let vn = u * nx + v * ny;
        let q2 = u * u + v * v;
        let right = Matrix::<4>::new(
            1.0, 1.0, 0.0, 1.0, //
            u - c * nx, u, -ny, u + c * nx, //
            v - c * ny, v, nx, v + c * ny, //
            h - c * vn, 0.5 * q2, v * nx - u * ny, h + c * vn,
        );
        let b1 = g1 / (c * c);
        let b2 = 0.5 * b1 * q2;
        let left = Matrix::<4>::new(
            0.5 * (b2 + vn / c), 0.5 * (-b1 * u - nx / c), 0.5 * (-b1 * v - ny / c), 0.5 * b1, //
            1.0 - b2, b1 * u, b1 * v, -b1, //
            u * ny - v * nx, -ny, nx, 0.0, //
            0.5 * (b2 - vn / c), 0.5 * (-b1 * u + nx / c), 0.5 * (-b1 * v + ny / c), 0.5 * b1,
        );
        Ok(Eigen {
            left,
            values: State::<4>::new(vn - c, vn, vn, vn + c) * len,
            right,
        })
    }

    fn max_wave_speed(&self, w: &State<4>, _x: f64, _y: f64) -> f64 {
        (w[1] / w[0]).hypot(w[2] / w[0]) + self.sound_speed(w)
    }

    fn lxf_speed(&self, w: &State<4>, _x: f64, _y: f64) -> f64 {
        let c = self.sound_speed(w);
        (w[1] / w[0]).abs() + (w[2] / w[0]).abs() + 2.0 * c
    }

    /// Flow direction, or `(1, 0)` at rest.
    fn characteristic_direction(&self, w: &State<4>, _x: f64, _y: f64) -> [f64; 2] {
        let (u, v) = (w[1] / w[0], w[2] / w[0]);
        let s = u.hypot(v);
        if s < 1e-8 || !s.is_finite() {
            [1.0, 0.0]
        } else {
            [u / s, v / s]
        }
    }

    fn reflect(&self, w: &State<4>, n: [f64; 2]) -> State<4> {
        let mn = w[1] * n[0] + w[2] * n[1];
        State::<4>::new(w[0], w[1] - 2.0 * mn * n[0], w[2] - 2.0 * mn * n[1], w[3])
    }

    fn check_admissible(&self, w: &State<4>, x: f64, y: f64) -> Result<(), ModelError> {
        admissible(w, self.pressure(w), &[x, y])
    }

    fn roe_average(&self, states: &[State<4>]) -> Option<State<4>> {
        let mut wsum = 0.0;
        let (mut u, mut v, mut h) = (0.0, 0.0, 0.0);
        for w in states {
            if !(w[0] > 0.0) {
                return None;
            }
            let s = w[0].sqrt();
            wsum += s;
            u += s * w[1] / w[0];
            v += s * w[2] / w[0];
            h += s * (w[3] + self.pressure(w)) / w[0];
        }
        let (u, v, h) = (u / wsum, v / wsum, h / wsum);
        let rho = (wsum / states.len() as f64).powi(2);
        let q2 = u * u + v * v;
        let e = rho * (h + 0.5 * (self.gamma - 1.0) * q2) / self.gamma;
        Some(State::<4>::new(rho, rho * u, rho * v, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{fd_jacobian, flux_eval_2d};
    use proptest::prelude::*;

    #[test]
    fn inflow_flux() {
        let law = Euler2D::default();
        let w = conservative_2d(GAMMA, 1.0, 2.9, 0.0, 1.0 / GAMMA);
        let (f, g) = flux_eval_2d(&law, &w, 0.0, 0.5).unwrap();
        let p = 1.0 / GAMMA;
        let e = p / 0.4 + 0.5 * 2.9 * 2.9;
        assert!((f[0] - 2.9).abs() < 1e-14);
        assert!((f[1] - 9.124285714285714).abs() < 1e-12);
        assert_eq!(f[2], 0.0);
        assert!((f[3] - 2.9 * (e + p)).abs() < 1e-12);
        assert!((g[2] - p).abs() < 1e-14);
        assert!((law.sound_speed(&w) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn negative_pressure_is_rejected() {
        let law = Euler2D::default();
        let w = State::<4>::new(1.0, 3.0, 0.0, 1.0);
        assert!(matches!(
            law.check_admissible(&w, 0.0, 0.0),
            Err(ModelError::Inadmissible { reason: "pressure must be positive", .. })
        ));
        let law1 = Euler1D::default();
        assert!(law1.eigen(&State::<3>::new(-1.0, 0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn reflect_mirrors_normal_velocity() {
        let law = Euler2D::default();
        let w = conservative_2d(GAMMA, 1.0, 2.0, -0.3, 1.0);
        let r = law.reflect(&w, [0.0, 1.0]);
        assert_eq!(r, conservative_2d(GAMMA, 1.0, 2.0, 0.3, 1.0));
    }

    #[test]
    fn roe_average_of_equal_states_is_identity() {
        let law = Euler2D::default();
        let w = conservative_2d(GAMMA, 1.7, 2.6, -0.5, 1.5);
        let avg = law.roe_average(&[w, w, w, w]).unwrap();
        assert!((avg - w).abs().max() < 1e-13);
        let law1 = Euler1D::default();
        let w1 = conservative_1d(GAMMA, 0.8, 0.3, 0.9);
        assert!((law1.roe_average(&[w1, w1]).unwrap() - w1).abs().max() < 1e-13);
    }

    #[test]
    fn zero_direction_has_zero_eigenvalues() {
        let law = Euler2D::default();
        let w = conservative_2d(GAMMA, 1.0, 1.0, 1.0, 1.0);
        let e = law.eigen_in_direction(&w, [0.0, 0.0], 0.0, 0.0).unwrap();
        assert_eq!(e.values, State::<4>::zeros());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn euler1d_factorization(rho in 0.1f64..5.0, u in -3.0f64..3.0, p in 0.1f64..5.0) {
            let law = Euler1D::default();
            let w = conservative_1d(GAMMA, rho, u, p);
            let e = law.eigen(&w, 0.0).unwrap();
            prop_assert!((e.left * e.right - Matrix::<3>::identity()).abs().max() < 1e-10);
            let fd = fd_jacobian(|s| law.flux(s, 0.0), &w);
            let scale = fd.abs().max().max(1.0);
            prop_assert!((e.matrix() - fd).abs().max() <= 1e-6 * scale);
        }

        #[test]
        fn euler2d_factorization(
            rho in 0.1f64..5.0, u in -3.0f64..3.0, v in -3.0f64..3.0, p in 0.1f64..5.0,
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let law = Euler2D::default();
            let w = conservative_2d(GAMMA, rho, u, v, p);
            let n = [theta.cos(), theta.sin()];
            let e = law.eigen_in_direction(&w, n, 0.0, 0.0).unwrap();
            prop_assert!((e.left * e.right - Matrix::<4>::identity()).abs().max() < 1e-10);
            let fd = fd_jacobian(|s| law.flux_x(s, 0.0, 0.0) * n[0] + law.flux_y(s, 0.0, 0.0) * n[1], &w);
            let scale = fd.abs().max().max(1.0);
            prop_assert!((e.matrix() - fd).abs().max() <= 1e-6 * scale);
            let speed = e.values.abs().max();
            prop_assert!(speed <= law.max_wave_speed(&w, 0.0, 0.0) + 1e-12);
        }
    }
}
