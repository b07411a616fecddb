//! Quasi-one-dimensional nozzle flow with a standing normal shock.
//!
//! The area is defined through the isentropic relation `A(x) f(M(x)) = K`
//! with `f(w) = w / (1 + δw²)^p`. The Mach number is linear on each side of the
//! shock; the post-shock Mach number follows from the normal-shock relation and
//! `K` jumps so that `A` stays continuous.

use super::euler::{conservative_1d, Euler1D, GAMMA};
use super::{ConservationLaw1D, Eigen, ModelError, State};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NozzleProfile {
    pub gamma: f64,
    pub shock_x: f64,
    pub inlet_mach: f64,
    /// Mach number just upstream of the shock.
    pub pre_shock_mach: f64,
    pub outlet_mach: f64,
    /// Stagnation density and pressure of the upstream reservoir.
    pub reservoir: (f64, f64),
}

impl Default for NozzleProfile {
    fn default() -> Self {
        Self {
            gamma: GAMMA,
            shock_x: 0.5,
            inlet_mach: 0.8,
            pre_shock_mach: 1.3,
            outlet_mach: 1.8,
            reservoir: (1.0, 1.0),
        }
    }
}

impl NozzleProfile {
    fn delta(&self) -> f64 {
        0.5 * (self.gamma - 1.0)
    }

    fn exponent(&self) -> f64 {
        0.5 * (self.gamma + 1.0) / (self.gamma - 1.0)
    }

    /// `f(w) = w / (1 + δw²)^p`.
    pub fn area_mach_function(&self, w: f64) -> f64 {
        w / (1.0 + self.delta() * w * w).powf(self.exponent())
    }

    /// Normal-shock relation `M₂² = (1 + δM₁²)/(γM₁² − δ)`.
    pub fn post_shock_mach(&self) -> f64 {
        let (d, m1) = (self.delta(), self.pre_shock_mach);
        ((1.0 + d * m1 * m1) / (self.gamma * m1 * m1 - d)).sqrt()
    }

    /// Piecewise linear Mach number and its slope.
    pub fn mach(&self, x: f64) -> (f64, f64) {
        if x < self.shock_x {
            let slope = (self.pre_shock_mach - self.inlet_mach) / self.shock_x;
            (self.inlet_mach + slope * x, slope)
        } else {
            let m2 = self.post_shock_mach();
            let slope = (self.outlet_mach - m2) / (1.0 - self.shock_x);
            (m2 + slope * (x - self.shock_x), slope)
        }
    }

    /// Constant `K` on each side; upstream normalized so the sonic throat has `A = 1`.
    fn area_constant(&self, x: f64) -> f64 {
        let k1 = self.area_mach_function(1.0);
        if x < self.shock_x {
            k1
        } else {
            k1 * self.area_mach_function(self.post_shock_mach()) / self.area_mach_function(self.pre_shock_mach)
        }
    }

    pub fn area(&self, x: f64) -> f64 {
        self.area_constant(x) / self.area_mach_function(self.mach(x).0)
    }

    /// `A'(x)/A(x) = -(1 - M²)/(M(1 + δM²)) · M'(x)`.
    pub fn log_area_slope(&self, x: f64) -> f64 {
        let (m, dm) = self.mach(x);
        -(1.0 - m * m) / (m * (1.0 + self.delta() * m * m)) * dm
    }

    /// Post-shock reservoir `(ρ₀, p₀)` from the static jump conditions.
    fn downstream_reservoir(&self) -> (f64, f64) {
        let g = self.gamma;
        let m1 = self.pre_shock_mach;
        let (rho1, p1) = self.isentropic(self.reservoir, m1);
        let rho2 = rho1 * (g + 1.0) * m1 * m1 / ((g - 1.0) * m1 * m1 + 2.0);
        let p2 = p1 * (1.0 + 2.0 * g / (g + 1.0) * (m1 * m1 - 1.0));
        let m2 = self.post_shock_mach();
        let t = 1.0 + self.delta() * m2 * m2;
        (rho2 * t.powf(1.0 / (g - 1.0)), p2 * t.powf(g / (g - 1.0)))
    }

    fn isentropic(&self, (rho0, p0): (f64, f64), mach: f64) -> (f64, f64) {
        let g = self.gamma;
        let t = 1.0 + self.delta() * mach * mach;
        (rho0 * t.powf(-1.0 / (g - 1.0)), p0 * t.powf(-g / (g - 1.0)))
    }

    /// Primitive `(ρ, u, p)` of the steady flow at `x`.
    pub fn primitive(&self, x: f64) -> (f64, f64, f64) {
        let (m, _) = self.mach(x);
        let reservoir = if x < self.shock_x {
            self.reservoir
        } else {
            self.downstream_reservoir()
        };
        let (rho, p) = self.isentropic(reservoir, m);
        let c = (self.gamma * p / rho).sqrt();
        (rho, m * c, p)
    }

    pub fn state(&self, x: f64) -> State<3> {
        let (rho, u, p) = self.primitive(x);
        conservative_1d(self.gamma, rho, u, p)
    }
}

/// Euler flux with the geometric source `-(A'/A)(ρu, ρu², u(E + p))`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NozzleFlow {
    pub euler: Euler1D,
    pub profile: NozzleProfile,
}

impl NozzleFlow {
    pub fn new(profile: NozzleProfile) -> Self {
        Self {
            euler: Euler1D { gamma: profile.gamma },
            profile,
        }
    }
}

impl ConservationLaw1D<3> for NozzleFlow {
    fn flux(&self, w: &State<3>, _x: f64) -> State<3> {
        self.euler.flux_impl(w)
    }

    fn source(&self, w: &State<3>, x: f64) -> State<3> {
        let u = w[1] / w[0];
        let p = self.euler.pressure(w);
        State::<3>::new(w[1], w[1] * u, u * (w[2] + p)) * -self.profile.log_area_slope(x)
    }

    fn eigen(&self, w: &State<3>, x: f64) -> Result<Eigen<3>, ModelError> {
        self.euler.eigen_impl(w, x)
    }

    fn max_wave_speed(&self, w: &State<3>, x: f64) -> f64 {
        self.euler.max_wave_speed(w, x)
    }

    fn check_admissible(&self, w: &State<3>, x: f64) -> Result<(), ModelError> {
        self.euler.check_admissible(w, x)
    }

    fn roe_average(&self, states: &[State<3>]) -> Option<State<3>> {
        self.euler.roe_average_impl(states)
    }
}
