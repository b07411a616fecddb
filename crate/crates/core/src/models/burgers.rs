//! Scalar Burgers-type laws used by the 1D and 2D scalar benchmarks.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::{ConservationLaw1D, ConservationLaw2D, Eigen, ModelError, State};

/// Source terms of the 1D Burgers benchmarks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BurgersSource {
    /// `sin x cos x`
    Trigonometric,
    /// `-π cos(π x) u`
    SolutionDependent,
}

/// `u_t + (u²/2)_x = s(u, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Burgers1D {
    pub source: BurgersSource,
}

impl ConservationLaw1D<1> for Burgers1D {
    fn flux(&self, u: &State<1>, _x: f64) -> State<1> {
        State::<1>::new(0.5 * u[0] * u[0])
    }

    fn source(&self, u: &State<1>, x: f64) -> State<1> {
        match self.source {
            BurgersSource::Trigonometric => State::<1>::new(x.sin() * x.cos()),
            BurgersSource::SolutionDependent => State::<1>::new(-PI * (PI * x).cos() * u[0]),
        }
    }

    fn eigen(&self, u: &State<1>, _x: f64) -> Result<Eigen<1>, ModelError> {
        Ok(Eigen::scalar(u[0]))
    }

    fn max_wave_speed(&self, u: &State<1>, _x: f64) -> f64 {
        u[0].abs()
    }
}

/// Burgers flux `u²/(2√2)` in both directions: the 1D problems rotated onto
/// the grid diagonal, with the source written in `r = (x + y)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedBurgers {
    pub source: BurgersSource,
}

impl RotatedBurgers {
    fn speed(u: f64) -> f64 {
        FRAC_1_SQRT_2 * u
    }
}

impl ConservationLaw2D<1> for RotatedBurgers {
    fn flux_x(&self, u: &State<1>, _x: f64, _y: f64) -> State<1> {
        State::<1>::new(FRAC_1_SQRT_2 * 0.5 * u[0] * u[0])
    }

    fn flux_y(&self, u: &State<1>, _x: f64, _y: f64) -> State<1> {
        State::<1>::new(FRAC_1_SQRT_2 * 0.5 * u[0] * u[0])
    }

    fn source(&self, u: &State<1>, x: f64, y: f64) -> State<1> {
        let r = (x + y) * FRAC_1_SQRT_2;
        match self.source {
            BurgersSource::Trigonometric => State::<1>::new(r.sin() * r.cos()),
            BurgersSource::SolutionDependent => State::<1>::new(-PI * (PI * r).cos() * u[0]),
        }
    }

    fn eigen_in_direction(&self, u: &State<1>, n: [f64; 2], _x: f64, _y: f64) -> Result<Eigen<1>, ModelError> {
        let a = Self::speed(u[0]);
        Ok(Eigen::scalar(n[0] * a + n[1] * a))
    }

    fn max_wave_speed(&self, u: &State<1>, _x: f64, _y: f64) -> f64 {
        u[0].abs()
    }

    fn lxf_speed(&self, u: &State<1>, _x: f64, _y: f64) -> f64 {
        2.0 * Self::speed(u[0]).abs()
    }
}

/// `u_t + (u²/2)_x + u_y = 0`: a 1D Burgers problem with `y` as time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShearBurgers;

impl ConservationLaw2D<1> for ShearBurgers {
    fn flux_x(&self, u: &State<1>, _x: f64, _y: f64) -> State<1> {
        State::<1>::new(0.5 * u[0] * u[0])
    }

    fn flux_y(&self, u: &State<1>, _x: f64, _y: f64) -> State<1> {
        *u
    }

    fn has_source(&self) -> bool {
        false
    }

    fn eigen_in_direction(&self, u: &State<1>, n: [f64; 2], _x: f64, _y: f64) -> Result<Eigen<1>, ModelError> {
        Ok(Eigen::scalar(n[0] * u[0] + n[1]))
    }

    fn max_wave_speed(&self, u: &State<1>, _x: f64, _y: f64) -> f64 {
        (u[0] * u[0] + 1.0).sqrt()
    }

    fn lxf_speed(&self, u: &State<1>, _x: f64, _y: f64) -> f64 {
        u[0].abs() + 1.0
    }
}
