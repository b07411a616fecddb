//! Splitting a cell's total residual among its vertices:
//! `Φᵏ = R̄ (Bᵏ ⊙ L̄Φ) + Φᵏ_diss`, where `Bᵏ` are Struijs weights of the
//! Lax–Friedrichs parts in characteristic variables and `Φᵏ_diss` is the
//! streamline dissipation. For scalar laws `L̄ = R̄ = 1`.

use crate::models::{eigen_eval, eigen_eval_2d, ConservationLaw1D, ConservationLaw2D, Eigen, Matrix, State};

use super::limiter::{roe_correct, struijs_limiter, RoeFix};
use super::{AverageState, Direction, RdError, RdParameters};

/// A total residual and its parts. In 1D the parts are ordered (left, right);
/// in 2D `(M1, M2, M3, M4) = ((i+1, j+1), (i+1, j), (i, j+1), (i, j))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellDistribution<const M: usize, const K: usize> {
    pub total: State<M>,
    pub parts: [State<M>; K],
}

impl<const M: usize, const K: usize> CellDistribution<M, K> {
    pub fn parts_sum(&self) -> State<M> {
        self.parts.iter().fold(State::<M>::zeros(), |acc, p| acc + p)
    }
}

fn mean<const M: usize, const K: usize>(states: &[State<M>; K]) -> State<M> {
    states.iter().fold(State::<M>::zeros(), |acc, s| acc + s) / K as f64
}

/// `α = Δx · max(ρ(f'(u_i)), ρ(f'(u_{i+1})))`.
pub fn alpha_1d<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    (u_l, u_r): (&State<M>, &State<M>),
    (x_l, x_r): (f64, f64),
) -> f64 {
    (x_r - x_l) * law.max_wave_speed(u_l, x_l).max(law.max_wave_speed(u_r, x_r))
}

/// `α = max(Δx, Δy) · max_k (ρ(f'(u_k)) + ρ(g'(u_k)))`.
pub fn alpha_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    states: &[State<M>; 4],
    positions: &[(f64, f64); 4],
    (dx, dy): (f64, f64),
) -> f64 {
    let speed = states
        .iter()
        .zip(positions)
        .fold(0.0f64, |m, (u, &(x, y))| m.max(law.lxf_speed(u, x, y)));
    dx.max(dy) * speed
}

/// `Φ^{LxF,k} = Φ/K + α(u_k − ū)` with `ū` the arithmetic mean.
pub fn lxf_split<const M: usize, const K: usize>(total: &State<M>, states: &[State<M>; K], alpha: f64) -> [State<M>; K] {
    let avg = mean(states);
    let share = total / K as f64;
    states.map(|u| share + (u - avg) * alpha)
}

/// `(Φ⁻_diss, Φ⁺_diss) = ∓½ R̄ diag(λ/|λ|_Roe) L̄ Φ`.
pub fn dissipation_1d<const M: usize>(total: &State<M>, eigen: &Eigen<M>, fix: RoeFix) -> [State<M>; 2] {
    let d = eigen.map_matrix(|l| l / roe_correct(l, fix)) * total * 0.5;
    [-d, d]
}

/// `∇φ^{M_k}` evaluated at its own vertex, for `M1..M4`.
pub fn basis_gradients_2d((dx, dy): (f64, f64)) -> [[f64; 2]; 4] {
    [
        [1.0 / dx, 1.0 / dy],
        [1.0 / dx, -1.0 / dy],
        [-1.0 / dx, 1.0 / dy],
        [-1.0 / dx, -1.0 / dy],
    ]
}

/// `Φᵏ_diss = K_k τ Φ` with `K_k` the Jacobian along `∇φ^{M_k}` and
/// `τ⁻¹ = Σ_k |K_k|`. The gradients at opposite vertices are negatives of each
/// other, so `K3 = −K2`, `K4 = −K1` and the parts cancel exactly.
pub fn dissipation_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    total: &State<M>,
    ubar: &State<M>,
    (cx, cy): (f64, f64),
    spacing: (f64, f64),
    fix: RoeFix,
) -> Result<[State<M>; 4], RdError> {
    let grads = basis_gradients_2d(spacing);
    let e1 = eigen_eval_2d(law, ubar, grads[0], cx, cy)?;
    let e2 = eigen_eval_2d(law, ubar, grads[1], cx, cy)?;
    let abs = |e: &Eigen<M>| e.map_matrix(|l| roe_correct(l, fix));
    let tau_inv: Matrix<M> = (abs(&e1) + abs(&e2)) * 2.0;
    let zero = [State::<M>::zeros(); 4];
    let Some(tau) = tau_inv.try_inverse() else {
        return Ok(zero);
    };
    let tphi = tau * total;
    if !tphi.iter().all(|v| v.is_finite()) {
        return Ok(zero);
    }
    let d1 = e1.matrix() * tphi;
    let d2 = e2.matrix() * tphi;
    Ok([d1, d2, -d2, -d1])
}

/// Struijs-limited parts `R̄ (Bᵏ ⊙ L̄Φ)` from the Lax–Friedrichs parts.
fn limited_parts<const M: usize, const K: usize>(
    total: &State<M>,
    lxf: &[State<M>; K],
    eigen: &Eigen<M>,
) -> [State<M>; K] {
    let psi = eigen.left * total;
    let psi_parts = lxf.map(|p| eigen.left * p);
    let mut limited = [State::<M>::zeros(); K];
    for c in 0..M {
        let weights = struijs_limiter(&psi_parts.map(|p| p[c]), psi[c]);
        for (lk, w) in limited.iter_mut().zip(weights) {
            lk[c] = w * psi[c];
        }
    }
    limited.map(|b| eigen.right * b)
}

fn average<const M: usize, const K: usize>(
    states: &[State<M>; K],
    policy: AverageState,
    roe: impl FnOnce(&[State<M>]) -> Option<State<M>>,
) -> State<M> {
    match policy {
        AverageState::Arithmetic => mean(states),
        AverageState::Roe => roe(states).unwrap_or_else(|| mean(states)),
    }
}

/// Distribution of one 1D cell `[x_l, x_r]`.
pub fn distribute_1d<const M: usize, L: ConservationLaw1D<M> + ?Sized>(
    law: &L,
    states: [State<M>; 2],
    (x_l, x_r): (f64, f64),
    total: State<M>,
    params: &RdParameters,
) -> Result<CellDistribution<M, 2>, RdError> {
    let ubar = average(&states, params.average, |s| law.roe_average(s));
    let eigen = eigen_eval(law, &ubar, 0.5 * (x_l + x_r))?;
    let alpha = alpha_1d(law, (&states[0], &states[1]), (x_l, x_r));
    let lxf = lxf_split(&total, &states, alpha);
    let limited = limited_parts(&total, &lxf, &eigen);
    let diss = dissipation_1d(&total, &eigen, params.roe);
    Ok(CellDistribution {
        total,
        parts: [limited[0] + diss[0], limited[1] + diss[1]],
    })
}

/// Distribution of one 2D cell; `states` and `positions` in `M1..M4` order.
pub fn distribute_2d<const M: usize, L: ConservationLaw2D<M> + ?Sized>(
    law: &L,
    states: [State<M>; 4],
    positions: [(f64, f64); 4],
    spacing: (f64, f64),
    total: State<M>,
    params: &RdParameters,
) -> Result<CellDistribution<M, 4>, RdError> {
    let ubar = average(&states, params.average, |s| law.roe_average(s));
    let cx = 0.25 * positions.iter().map(|p| p.0).sum::<f64>();
    let cy = 0.25 * positions.iter().map(|p| p.1).sum::<f64>();
    let n = match params.direction {
        Direction::Model => law.characteristic_direction(&ubar, cx, cy),
        Direction::Fixed(n) => n,
    };
    let eigen = eigen_eval_2d(law, &ubar, n, cx, cy)?;
    let alpha = alpha_2d(law, &states, &positions, spacing);
    let lxf = lxf_split(&total, &states, alpha);
    let limited = limited_parts(&total, &lxf, &eigen);
    let diss = dissipation_2d(law, &total, &ubar, (cx, cy), spacing, params.roe)?;
    let mut parts = limited;
    for (p, d) in parts.iter_mut().zip(diss) {
        *p += d;
    }
    Ok(CellDistribution { total, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::burgers::{Burgers1D, BurgersSource, RotatedBurgers, ShearBurgers};
    use crate::models::cauchy_riemann::CauchyRiemann;
    use crate::models::euler::{conservative_1d, conservative_2d, Euler1D, Euler2D, GAMMA};
    use crate::models::shallow_water::ShallowWater;
    use crate::models::ModelError;
    use proptest::prelude::*;

    const BURGERS: Burgers1D = Burgers1D {
        source: BurgersSource::Trigonometric,
    };

    fn s1(a: f64) -> State<1> {
        State::<1>::new(a)
    }

    #[test]
    fn alpha_examples() {
        assert!((alpha_1d(&BURGERS, (&s1(1.0), &s1(-2.0)), (0.0, 0.1)) - 0.2).abs() < 1e-16);
        assert_eq!(alpha_1d(&BURGERS, (&s1(0.0), &s1(0.0)), (0.0, 0.1)), 0.0);
        let sw = ShallowWater::default();
        let (a, b) = (State::<2>::new(1.0, 0.0), State::<2>::new(2.0, 1.0));
        let expected = 0.5 * (0.5 + (2.0 * 9.8f64).sqrt());
        assert!((alpha_1d(&sw, (&a, &b), (1.0, 1.5)) - expected).abs() < 1e-14);
    }

    #[test]
    fn lxf_examples() {
        let parts = lxf_split(&s1(1.0), &[s1(0.0), s1(2.0)], 0.5);
        assert_eq!(parts, [s1(0.0), s1(1.0)]);
        let parts = lxf_split(&s1(0.8), &[s1(0.3); 4], 7.0);
        assert_eq!(parts, [s1(0.2); 4]);
    }

    #[test]
    fn dissipation_1d_examples() {
        let fix = RoeFix::default();
        assert_eq!(dissipation_1d(&s1(1.0), &Eigen::scalar(2.0), fix), [s1(-0.5), s1(0.5)]);
        assert_eq!(dissipation_1d(&s1(1.0), &Eigen::scalar(0.0), fix), [s1(-0.0), s1(0.0)]);

        let sw = ShallowWater::default();
        let e = sw.eigen(&State::<2>::new(1.0, 0.0), 0.0).unwrap();
        let phi = State::<2>::new(0.3, -0.7);
        let [dm, dp] = dissipation_1d(&phi, &e, fix);
        // R diag(-1, 1) L at rest: c = √9.8, R = [[1, 1], [-c, c]], L = [[c, -1], [c, 1]]/(2c).
        let c = 9.8f64.sqrt();
        let r = Matrix::<2>::new(1.0, 1.0, -c, c);
        let l = Matrix::<2>::new(c, -1.0, c, 1.0) / (2.0 * c);
        let oracle = r * Matrix::<2>::from_diagonal(&State::<2>::new(-1.0, 1.0)) * l * phi * 0.5;
        assert!((dp - oracle).abs().max() < 1e-15);
        assert_eq!(dm, -dp);
    }

    #[test]
    fn basis_gradients() {
        let g = basis_gradients_2d((1.0, 1.0));
        assert_eq!(g[0], [1.0, 1.0]);
        let g = basis_gradients_2d((0.5, 0.25));
        assert_eq!(g[1], [2.0, -4.0]);
        assert_eq!(g[3], [-2.0, -4.0]);
        // partition of unity of the bilinear basis at the centre: four quarters
        let phi = |a: f64, b: f64| [a * b, a * (1.0 - b), (1.0 - a) * b, (1.0 - a) * (1.0 - b)];
        assert_eq!(phi(0.5, 0.5).iter().sum::<f64>(), 1.0);
        for k in 0..2 {
            assert_eq!(g.iter().map(|v| v[k]).sum::<f64>(), 0.0);
        }
    }

    struct XAdvection;

    impl ConservationLaw2D<1> for XAdvection {
        fn flux_x(&self, u: &State<1>, _x: f64, _y: f64) -> State<1> {
            *u
        }
        fn flux_y(&self, _u: &State<1>, _x: f64, _y: f64) -> State<1> {
            State::<1>::zeros()
        }
        fn eigen_in_direction(&self, _u: &State<1>, n: [f64; 2], _x: f64, _y: f64) -> Result<Eigen<1>, ModelError> {
            Ok(Eigen::scalar(n[0]))
        }
        fn max_wave_speed(&self, _u: &State<1>, _x: f64, _y: f64) -> f64 {
            1.0
        }
        fn lxf_speed(&self, _u: &State<1>, _x: f64, _y: f64) -> f64 {
            1.0
        }
    }

    #[test]
    fn dissipation_2d_pure_x_advection() {
        let d = dissipation_2d(&XAdvection, &s1(1.0), &s1(0.0), (0.5, 0.5), (1.0, 1.0), RoeFix::default()).unwrap();
        // k = (1, 1, -1, -1), τ = 1/4
        assert_eq!(d, [s1(0.25), s1(0.25), s1(-0.25), s1(-0.25)]);
        let zero = dissipation_2d(&XAdvection, &s1(0.0), &s1(0.0), (0.5, 0.5), (1.0, 1.0), RoeFix::default()).unwrap();
        assert_eq!(zero, [s1(0.0); 4]);
    }

    #[test]
    fn dissipation_2d_diagonal_advection_is_symmetric() {
        // Rotated Burgers at u = 1: (f', g') = (1, 1)/√2.
        let law = RotatedBurgers {
            source: BurgersSource::Trigonometric,
        };
        let d = dissipation_2d(&law, &s1(1.0), &s1(1.0), (0.5, 0.5), (0.1, 0.1), RoeFix::default()).unwrap();
        // k = (√2/Δx, 0, 0, −√2/Δx); the zero speed is Roe-fixed to ε/2 in τ
        let k1 = 2.0f64.sqrt() / 0.1;
        let expected = k1 / (2.0 * (k1 + 0.005));
        assert!((d[0][0] - expected).abs() < 1e-15);
        assert!(d[1][0].abs() < 1e-15 && d[2][0].abs() < 1e-15);
        assert!((d[3][0] + expected).abs() < 1e-15);
    }

    #[test]
    fn scalar_1d_arithmetic() {
        // β = (1, 0) from LxF parts (Φ, 0); dissipation (−Φ/2, Φ/2) → (Φ/2, Φ/2).
        let phi = 0.8;
        let states = [s1(2.0), s1(2.0)];
        let params = RdParameters::default();
        let dist = distribute_1d(&BURGERS, states, (0.0, 0.1), s1(phi), &params).unwrap();
        // equal states: LxF parts are Φ/2 each, so β = (1/2, 1/2), plus dissipation ∓Φ/2
        assert_eq!(dist.parts, [s1(0.0), s1(phi)]);

        let lxf = [s1(phi), s1(0.0)];
        assert_eq!(struijs_limiter(&lxf.map(|p| p[0]), phi), [1.0, 0.0]);
        let diss = dissipation_1d(&s1(phi), &Eigen::scalar(2.0), params.roe);
        assert_eq!(1.0 * phi + diss[0][0], phi / 2.0);
        assert_eq!(0.0 * phi + diss[1][0], phi / 2.0);
    }

    #[test]
    fn scalar_1d_matches_direct_formula() {
        let params = RdParameters::default();
        for (ul, ur, phi) in [(0.3, -0.9, 0.02), (1.2, 1.1, -0.3), (-0.004, 0.003, 1e-3)] {
            let dist = distribute_1d(&BURGERS, [s1(ul), s1(ur)], (0.2, 0.3), s1(phi), &params).unwrap();
            let ubar = 0.5 * (ul + ur);
            let alpha = 0.1 * f64::max(ul.abs(), ur.abs());
            let lm = phi / 2.0 + alpha * (ul - ubar);
            let lp = phi / 2.0 + alpha * (ur - ubar);
            let (bm, bp) = ((lm / phi).max(0.0), (lp / phi).max(0.0));
            let sign = ubar / roe_correct(ubar, params.roe);
            let pm = bm / (bm + bp) * phi - 0.5 * sign * phi;
            let pp = bp / (bm + bp) * phi + 0.5 * sign * phi;
            assert!((dist.parts[0][0] - pm).abs() < 1e-15, "{ul} {ur}");
            assert!((dist.parts[1][0] - pp).abs() < 1e-15, "{ul} {ur}");
        }
    }

    #[test]
    fn constant_cell_has_zero_parts() {
        let params = RdParameters::default();
        let d = distribute_1d(&BURGERS, [s1(0.4), s1(0.4)], (0.0, 0.1), s1(0.0), &params).unwrap();
        assert_eq!(d.parts, [s1(0.0); 2]);
        let law = Euler2D::default();
        let w = conservative_2d(GAMMA, 1.0, 2.9, 0.0, 1.0 / GAMMA);
        let pos = [(0.1, 0.1), (0.1, 0.0), (0.0, 0.1), (0.0, 0.0)];
        let d = distribute_2d(&law, [w; 4], pos, (0.1, 0.1), State::<4>::zeros(), &params).unwrap();
        assert!(d.parts.iter().all(|p| p.abs().max() == 0.0));
    }

    fn check_conservation<const M: usize, const K: usize>(d: &CellDistribution<M, K>) -> Result<(), TestCaseError> {
        let err = (d.parts_sum() - d.total).abs().max();
        let scale = d.total.abs().max().max(1.0);
        prop_assert!(err <= 1e-12 * scale, "err {err} total {:?}", d.total);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn conservation_scalar_1d(ul in -3.0f64..3.0, ur in -3.0f64..3.0, phi in -1.0f64..1.0) {
            let d = distribute_1d(&BURGERS, [s1(ul), s1(ur)], (0.0, 0.05), s1(phi), &RdParameters::default()).unwrap();
            check_conservation(&d)?;
        }

        #[test]
        fn conservation_euler_1d(
            r in proptest::array::uniform2(0.2f64..3.0),
            v in proptest::array::uniform2(-2.0f64..2.0),
            p in proptest::array::uniform2(0.2f64..3.0),
            phi in proptest::array::uniform3(-1.0f64..1.0),
            roe in any::<bool>(),
        ) {
            let law = Euler1D::default();
            let states = [conservative_1d(GAMMA, r[0], v[0], p[0]), conservative_1d(GAMMA, r[1], v[1], p[1])];
            let params = RdParameters {
                average: if roe { AverageState::Roe } else { AverageState::Arithmetic },
                ..RdParameters::default()
            };
            let d = distribute_1d(&law, states, (0.0, 0.01), State::<3>::from(phi), &params).unwrap();
            check_conservation(&d)?;
            let diss = dissipation_1d(&State::<3>::from(phi), &law.eigen(&states[0], 0.0).unwrap(), params.roe);
            prop_assert_eq!(diss[0] + diss[1], State::<3>::zeros());
        }

        #[test]
        fn conservation_shear_2d(u in proptest::array::uniform4(-2.0f64..2.0), phi in -1.0f64..1.0) {
            let pos = [(0.1, 0.1), (0.1, 0.0), (0.0, 0.1), (0.0, 0.0)];
            let states = u.map(s1);
            let d = distribute_2d(&ShearBurgers, states, pos, (0.1, 0.1), s1(phi), &RdParameters::default()).unwrap();
            check_conservation(&d)?;
            let diss = dissipation_2d(&ShearBurgers, &s1(phi), &s1(u[0]), (0.05, 0.05), (0.1, 0.1), RoeFix::default()).unwrap();
            prop_assert!(diss.iter().fold(0.0, |a, d| a + d[0]).abs() < 1e-15);
        }

        #[test]
        fn conservation_euler_2d(
            r in proptest::array::uniform4(0.2f64..3.0),
            u in proptest::array::uniform4(-2.0f64..3.0),
            v in proptest::array::uniform4(-1.0f64..1.0),
            p in proptest::array::uniform4(0.2f64..3.0),
            phi in proptest::array::uniform4(-1.0f64..1.0),
        ) {
            let law = Euler2D::default();
            let states = [0, 1, 2, 3].map(|k| conservative_2d(GAMMA, r[k], u[k], v[k], p[k]));
            let pos = [(0.025, 0.025), (0.025, 0.0), (0.0, 0.025), (0.0, 0.0)];
            let total = State::<4>::from(phi);
            let d = distribute_2d(&law, states, pos, (0.025, 0.025), total, &RdParameters::default()).unwrap();
            check_conservation(&d)?;
            let ubar = states.iter().sum::<State<4>>() / 4.0;
            let diss = dissipation_2d(&law, &total, &ubar, (0.0125, 0.0125), (0.025, 0.025), RoeFix::default()).unwrap();
            prop_assert!(diss.iter().sum::<State<4>>().abs().max() < 1e-14);
            prop_assert_eq!(diss[0], -diss[3]);
            prop_assert_eq!(diss[1], -diss[2]);
        }

        #[test]
        fn conservation_cauchy_riemann(
            w in proptest::array::uniform8(-3.0f64..3.0),
            phi in proptest::array::uniform2(-1.0f64..1.0),
            cx in -2.0f64..2.0, cy in -2.0f64..2.0,
        ) {
            let states = [0, 1, 2, 3].map(|k| State::<2>::new(w[2 * k], w[2 * k + 1]));
            let h = 0.05;
            let pos = [(cx + h, cy + h), (cx + h, cy), (cx, cy + h), (cx, cy)];
            let params = RdParameters { direction: Direction::Fixed([1.0, 0.0]), ..RdParameters::default() };
            let d = distribute_2d(&CauchyRiemann, states, pos, (h, h), State::<2>::from(phi), &params).unwrap();
            check_conservation(&d)?;
        }
    }

    #[test]
    fn inadmissible_average_is_an_error() {
        let law = Euler1D::default();
        let bad = State::<3>::new(1.0, 0.0, -1.0);
        assert!(distribute_1d(&law, [bad, bad], (0.0, 0.1), State::<3>::zeros(), &RdParameters::default()).is_err());
    }
}
