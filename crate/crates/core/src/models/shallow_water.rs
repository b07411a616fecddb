//! One-dimensional shallow water over a smooth bump.

use super::{ConservationLaw1D, Eigen, Matrix, ModelError, State};

pub const GRAVITY: f64 = 9.8;

/// Bottom `b(x) = 5 exp(-0.4 (x - 5)²)` on `[0, 10]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    pub amplitude: f64,
    pub centre: f64,
    pub decay: f64,
}

impl Default for GaussianBump {
    fn default() -> Self {
        Self {
            amplitude: 5.0,
            centre: 5.0,
            decay: 0.4,
        }
    }
}

impl GaussianBump {
    pub fn height(&self, x: f64) -> f64 {
        let d = x - self.centre;
        self.amplitude * (-self.decay * d * d).exp()
    }

    pub fn slope(&self, x: f64) -> f64 {
        -2.0 * self.decay * (x - self.centre) * self.height(x)
    }
}

/// State `(h, hu)`, flux `(hu, hu² + g h²/2)`, source `(0, -g h b')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShallowWater {
    pub gravity: f64,
    pub bottom: GaussianBump,
}

impl Default for ShallowWater {
    fn default() -> Self {
        Self {
            gravity: GRAVITY,
            bottom: GaussianBump::default(),
        }
    }
}

impl ShallowWater {
    /// Lake at rest `h + b = level`, `hu = 0`.
    pub fn lake_at_rest(&self, level: f64, x: f64) -> State<2> {
        State::<2>::new(level - self.bottom.height(x), 0.0)
    }
}

impl ConservationLaw1D<2> for ShallowWater {
    fn flux(&self, u: &State<2>, _x: f64) -> State<2> {
        let (h, q) = (u[0], u[1]);
        State::<2>::new(q, q * q / h + 0.5 * self.gravity * h * h)
    }

    fn source(&self, u: &State<2>, x: f64) -> State<2> {
        State::<2>::new(0.0, -self.gravity * u[0] * self.bottom.slope(x))
    }

    fn eigen(&self, u: &State<2>, x: f64) -> Result<Eigen<2>, ModelError> {
        let h = u[0];
        if !(h > 0.0) {
            return Err(ModelError::inadmissible(u, &[x], "water height must be positive"));
        }
        let v = u[1] / h;
        let c = (self.gravity * h).sqrt();
        let right = Matrix::<2>::new(1.0, 1.0, v - c, v + c);
        let left = Matrix::<2>::new(v + c, -1.0, -(v - c), 1.0) / (2.0 * c);
        Ok(Eigen {
            left,
            values: State::<2>::new(v - c, v + c),
            right,
        })
    }

    fn max_wave_speed(&self, u: &State<2>, _x: f64) -> f64 {
        let h = u[0];
        (u[1] / h).abs() + (self.gravity * h.max(0.0)).sqrt()
    }

    fn check_admissible(&self, u: &State<2>, x: f64) -> Result<(), ModelError> {
        if u[0] > 0.0 && u.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(ModelError::inadmissible(u, &[x], "water height must be positive"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{eigen_eval, fd_jacobian, flux_eval, source_eval};
    use proptest::prelude::*;

    #[test]
    fn flux_at_rest() {
        let sw = ShallowWater::default();
        let f = flux_eval(&sw, &State::<2>::new(1.0, 0.0), 0.0).unwrap();
        assert_eq!(f, State::<2>::new(0.0, 4.9));
    }

    #[test]
    fn source_vanishes_at_bump_crest() {
        let sw = ShallowWater::default();
        let u = sw.lake_at_rest(10.0, 5.0);
        assert!((u[0] - 5.0).abs() < 1e-15);
        assert_eq!(source_eval(&sw, &u, 5.0).unwrap()[1], 0.0);
    }

    #[test]
    fn bump_slope_matches_finite_difference() {
        let b = GaussianBump::default();
        for k in 0..=20 {
            let x = k as f64 * 0.5;
            let h = 1e-5;
            let fd = (b.height(x + h) - b.height(x - h)) / (2.0 * h);
            assert!((fd - b.slope(x)).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn eigenvalues_at_rest() {
        let sw = ShallowWater::default();
        let e = eigen_eval(&sw, &State::<2>::new(1.0, 0.0), 0.0).unwrap();
        let c = 9.8f64.sqrt();
        assert!((e.values[0] + c).abs() < 1e-14);
        assert!((e.values[1] - c).abs() < 1e-14);
        // roots of λ² - 2vλ + v² - gh for the analytic Jacobian [[0,1],[gh - v², 2v]]
        let jac = Matrix::<2>::new(0.0, 1.0, 9.8, 0.0);
        assert!((e.matrix() - jac).abs().max() < 1e-13);
    }

    #[test]
    fn dry_state_is_rejected() {
        let sw = ShallowWater::default();
        assert!(matches!(
            flux_eval(&sw, &State::<2>::new(0.0, 1.0), 2.0),
            Err(ModelError::Inadmissible { .. })
        ));
        assert!(sw.eigen(&State::<2>::new(-1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn lake_at_rest_is_balanced_pointwise() {
        // d/dx (g h²/2) = g h h' = -g h b' cancels the source exactly.
        let sw = ShallowWater::default();
        for k in 0..=50 {
            let x = k as f64 * 0.2;
            let h = 10.0 - sw.bottom.height(x);
            let dflux = sw.gravity * h * (-sw.bottom.slope(x));
            let s = sw.source(&State::<2>::new(h, 0.0), x)[1];
            assert!((dflux - s).abs() <= 1e-12 * dflux.abs().max(1.0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn eigen_factorization(h in 0.1f64..10.0, v in -5.0f64..5.0) {
            let sw = ShallowWater::default();
            let u = State::<2>::new(h, h * v);
            let e = sw.eigen(&u, 0.0).unwrap();
            let id = e.left * e.right;
            prop_assert!((id - Matrix::<2>::identity()).abs().max() < 1e-10);
            let fd = fd_jacobian(|w| sw.flux(w, 0.0), &u);
            let scale = fd.abs().max().max(1.0);
            prop_assert!((e.matrix() - fd).abs().max() <= 1e-6 * scale);
        }
    }
}
