//! Registry of the benchmark problems: domain, data, boundary policy and the
//! exact steady state where one is known.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use super::burgers::{Burgers1D, BurgersSource, RotatedBurgers, ShearBurgers};
use super::cauchy_riemann::{CauchyRiemann, QuadrantData};
use super::euler::{conservative_2d, Euler2D, GAMMA};
use super::nozzle::{NozzleFlow, NozzleProfile};
use super::shallow_water::ShallowWater;
use super::{ConservationLaw1D, ConservationLaw2D, State};

pub type Field1D<const M: usize> = Arc<dyn Fn(f64) -> State<M> + Send + Sync>;
pub type Field2D<const M: usize> = Arc<dyn Fn(f64, f64) -> State<M> + Send + Sync>;
pub type PartialField2D<const M: usize> = Arc<dyn Fn(f64, f64) -> Option<State<M>> + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown problem `{name}`; valid names: {}", PROBLEM_NAMES.join(", "))]
pub struct UnknownProblem {
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Burgers1DSmooth,
    Burgers1DShock,
    Burgers1DSource,
    ShallowWater,
    Nozzle,
    Burgers2DSmooth,
    Burgers2DSource,
    Burgers2DShear,
    CauchyRiemann,
    ShockReflection,
}

pub const PROBLEM_NAMES: [&str; 10] = [
    "burgers1d-smooth",
    "burgers1d-shock",
    "burgers1d-source",
    "shallow-water",
    "nozzle",
    "burgers2d-smooth",
    "burgers2d-source",
    "burgers2d-shear",
    "cauchy-riemann",
    "shock-reflection",
];

impl ProblemKind {
    pub const ALL: [ProblemKind; 10] = [
        ProblemKind::Burgers1DSmooth,
        ProblemKind::Burgers1DShock,
        ProblemKind::Burgers1DSource,
        ProblemKind::ShallowWater,
        ProblemKind::Nozzle,
        ProblemKind::Burgers2DSmooth,
        ProblemKind::Burgers2DSource,
        ProblemKind::Burgers2DShear,
        ProblemKind::CauchyRiemann,
        ProblemKind::ShockReflection,
    ];

    pub fn name(self) -> &'static str {
        PROBLEM_NAMES[Self::ALL.iter().position(|&k| k == self).unwrap_or(0)]
    }

    pub fn is_2d(self) -> bool {
        matches!(
            self,
            ProblemKind::Burgers2DSmooth
                | ProblemKind::Burgers2DSource
                | ProblemKind::Burgers2DShear
                | ProblemKind::CauchyRiemann
                | ProblemKind::ShockReflection
        )
    }

    pub fn description(self) -> &'static str {
        match self {
            ProblemKind::Burgers1DSmooth => "Burgers with sin x cos x source, smooth steady state (beta = 2)",
            ProblemKind::Burgers1DShock => "Burgers with sin x cos x source, interior shock (beta = 0.5)",
            ProblemKind::Burgers1DSource => "Burgers with -pi cos(pi x) u source, stable shock branch",
            ProblemKind::ShallowWater => "shallow water lake at rest over a Gaussian bump",
            ProblemKind::Nozzle => "quasi-1D Euler nozzle flow with a standing shock",
            ProblemKind::Burgers2DSmooth => "rotated Burgers, smooth steady state (beta = 1.2)",
            ProblemKind::Burgers2DSource => "rotated Burgers with solution-dependent source and shock",
            ProblemKind::Burgers2DShear => "Burgers in x with y as time: fan merging into a shock",
            ProblemKind::CauchyRiemann => "self-similar Cauchy-Riemann Riemann problem",
            ProblemKind::ShockReflection => "regular shock reflection off a wall, 2D Euler",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PROBLEM_NAMES
            .iter()
            .position(|&n| n == s)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| UnknownProblem { name: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary1D<const M: usize> {
    /// Node pinned to the given state.
    Dirichlet(State<M>),
    /// Node evolves from the interior cell only.
    Outflow,
}

/// Policy on one edge of a rectangle. Dirichlet data comes from the problem's
/// boundary field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Dirichlet,
    Outflow,
    Reflective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edges {
    pub left: Edge,
    pub right: Edge,
    pub bottom: Edge,
    pub top: Edge,
}

impl Edges {
    pub fn all(edge: Edge) -> Self {
        Self {
            left: edge,
            right: edge,
            bottom: edge,
            top: edge,
        }
    }
}

#[derive(Clone)]
pub struct Problem1D<const M: usize> {
    pub kind: ProblemKind,
    pub law: Arc<dyn ConservationLaw1D<M>>,
    pub domain: (f64, f64),
    pub default_cells: usize,
    pub initial: Field1D<M>,
    pub exact: Option<Field1D<M>>,
    pub left: Boundary1D<M>,
    pub right: Boundary1D<M>,
    /// Shock position of the exact steady state.
    pub shock: Option<f64>,
}

impl<const M: usize> fmt::Debug for Problem1D<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem1D")
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("default_cells", &self.default_cells)
            .field("left", &self.left)
            .field("right", &self.right)
            .field("shock", &self.shock)
            .finish_non_exhaustive()
    }
}

#[derive(Clone)]
pub struct Problem2D<const M: usize> {
    pub kind: ProblemKind,
    pub law: Arc<dyn ConservationLaw2D<M>>,
    pub domain: ((f64, f64), (f64, f64)),
    pub default_cells: (usize, usize),
    pub initial: Field2D<M>,
    /// Data for Dirichlet edges.
    pub boundary: Field2D<M>,
    pub exact: Option<PartialField2D<M>>,
    pub edges: Edges,
}

impl<const M: usize> fmt::Debug for Problem2D<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem2D")
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("default_cells", &self.default_cells)
            .field("edges", &self.edges)
            .finish_non_exhaustive()
    }
}

/// A configured benchmark, tagged by the number of components.
#[derive(Debug, Clone)]
pub enum BenchmarkProblem {
    Scalar1D(Problem1D<1>),
    ShallowWater(Problem1D<2>),
    Nozzle(Problem1D<3>),
    Scalar2D(Problem2D<1>),
    CauchyRiemann(Problem2D<2>),
    Euler2D(Problem2D<4>),
}

impl BenchmarkProblem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            BenchmarkProblem::Scalar1D(p) => p.kind,
            BenchmarkProblem::ShallowWater(p) => p.kind,
            BenchmarkProblem::Nozzle(p) => p.kind,
            BenchmarkProblem::Scalar2D(p) => p.kind,
            BenchmarkProblem::CauchyRiemann(p) => p.kind,
            BenchmarkProblem::Euler2D(p) => p.kind,
        }
    }

    pub fn components(&self) -> usize {
        match self {
            BenchmarkProblem::Scalar1D(_) | BenchmarkProblem::Scalar2D(_) => 1,
            BenchmarkProblem::ShallowWater(_) | BenchmarkProblem::CauchyRiemann(_) => 2,
            BenchmarkProblem::Nozzle(_) => 3,
            BenchmarkProblem::Euler2D(_) => 4,
        }
    }

    pub fn is_2d(&self) -> bool {
        self.kind().is_2d()
    }
}

pub fn registry_lookup(name: &str) -> Result<BenchmarkProblem, UnknownProblem> {
    Ok(build(name.parse()?))
}

fn scalar(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Field1D<1> {
    Arc::new(move |x| State::<1>::new(f(x)))
}

fn scalar2(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Field2D<1> {
    Arc::new(move |x, y| State::<1>::new(f(x, y)))
}

/// Shock of the `β = 0.5` trigonometric Burgers problem: `π − asin √(1 − β²)`.
pub fn trig_burgers_shock(beta: f64) -> f64 {
    PI - (1.0 - beta * beta).sqrt().asin()
}

/// Stable shock of the solution-dependent Burgers problem, where
/// `u⁺ + u⁻ = 0.9 − 2 sin πx` vanishes.
pub fn source_burgers_shock() -> f64 {
    0.45f64.asin() / PI
}

pub fn source_burgers_exact(x: f64) -> f64 {
    if x < source_burgers_shock() {
        1.0 - (PI * x).sin()
    } else {
        -0.1 - (PI * x).sin()
    }
}

/// Exact fan/shock solution of the shear Burgers problem.
pub fn shear_exact(x: f64, y: f64) -> f64 {
    if y >= 0.5 {
        if -2.0 * (x - 0.75) + (y - 0.5) <= 0.0 {
            -0.5
        } else {
            1.5
        }
    } else {
        ((x - 0.75) / (y - 0.5)).clamp(-0.5, 1.5)
    }
}

/// Incident-shock state imposed on `y = 1` for the reflection problem, in
/// primitive `(ρ, u, v, p)`.
pub const REFLECTION_TOP: [f64; 4] = [1.69997, 2.61934, -0.50632, 1.52819];

/// Inflow state `(ρ, u, v, p)` of the reflection problem.
pub fn reflection_inflow() -> [f64; 4] {
    [1.0, 2.9, 0.0, 1.0 / GAMMA]
}

fn build(kind: ProblemKind) -> BenchmarkProblem {
    match kind {
        ProblemKind::Burgers1DSmooth | ProblemKind::Burgers1DShock => {
            let beta = if kind == ProblemKind::Burgers1DSmooth { 2.0 } else { 0.5 };
            let shock = (kind == ProblemKind::Burgers1DShock).then(|| trig_burgers_shock(beta));
            let exact = match shock {
                None => scalar(f64::sin),
                Some(xs) => scalar(move |x| if x < xs { x.sin() } else { -x.sin() }),
            };
            BenchmarkProblem::Scalar1D(Problem1D {
                kind,
                law: Arc::new(Burgers1D {
                    source: BurgersSource::Trigonometric,
                }),
                domain: (0.0, PI),
                default_cells: 80,
                initial: scalar(move |x| beta * x.sin()),
                exact: Some(exact),
                left: Boundary1D::Dirichlet(State::<1>::new(0.0)),
                right: Boundary1D::Dirichlet(State::<1>::new(0.0)),
                shock,
            })
        }
        ProblemKind::Burgers1DSource => BenchmarkProblem::Scalar1D(Problem1D {
            kind,
            law: Arc::new(Burgers1D {
                source: BurgersSource::SolutionDependent,
            }),
            domain: (0.0, 1.0),
            default_cells: 80,
            initial: scalar(|x| if x < 0.5 { 1.0 } else { -0.1 }),
            exact: Some(scalar(source_burgers_exact)),
            left: Boundary1D::Dirichlet(State::<1>::new(1.0)),
            right: Boundary1D::Dirichlet(State::<1>::new(-0.1)),
            shock: Some(source_burgers_shock()),
        }),
        ProblemKind::ShallowWater => {
            let sw = ShallowWater::default();
            let rest: Field1D<2> = Arc::new(move |x| sw.lake_at_rest(10.0, x));
            BenchmarkProblem::ShallowWater(Problem1D {
                kind,
                law: Arc::new(sw),
                domain: (0.0, 10.0),
                default_cells: 80,
                initial: rest.clone(),
                exact: Some(rest.clone()),
                left: Boundary1D::Dirichlet(rest(0.0)),
                right: Boundary1D::Dirichlet(rest(10.0)),
                shock: None,
            })
        }
        ProblemKind::Nozzle => {
            let profile = NozzleProfile::default();
            let state: Field1D<3> = Arc::new(move |x| profile.state(x));
            BenchmarkProblem::Nozzle(Problem1D {
                kind,
                law: Arc::new(NozzleFlow::new(profile)),
                domain: (0.0, 1.0),
                default_cells: 81,
                initial: state.clone(),
                exact: Some(state.clone()),
                left: Boundary1D::Dirichlet(state(0.0)),
                right: Boundary1D::Outflow,
                shock: Some(profile.shock_x),
            })
        }
        ProblemKind::Burgers2DSmooth => {
            let exact = scalar2(|x, y| ((x + y) * FRAC_1_SQRT_2).sin());
            let side = PI * FRAC_1_SQRT_2;
            BenchmarkProblem::Scalar2D(Problem2D {
                kind,
                law: Arc::new(RotatedBurgers {
                    source: BurgersSource::Trigonometric,
                }),
                domain: ((0.0, side), (0.0, side)),
                default_cells: (80, 80),
                initial: scalar2(|x, y| 1.2 * ((x + y) * FRAC_1_SQRT_2).sin()),
                boundary: exact.clone(),
                exact: Some(Arc::new(move |x, y| Some(exact(x, y)))),
                edges: Edges::all(Edge::Dirichlet),
            })
        }
        ProblemKind::Burgers2DSource => {
            let exact = scalar2(|x, y| source_burgers_exact((x + y) * FRAC_1_SQRT_2));
            BenchmarkProblem::Scalar2D(Problem2D {
                kind,
                law: Arc::new(RotatedBurgers {
                    source: BurgersSource::SolutionDependent,
                }),
                domain: ((0.0, FRAC_1_SQRT_2), (0.0, FRAC_1_SQRT_2)),
                default_cells: (80, 80),
                initial: scalar2(|x, y| if (x + y) * FRAC_1_SQRT_2 < 0.5 { 1.0 } else { -0.1 }),
                boundary: exact.clone(),
                exact: Some(Arc::new(move |x, y| Some(exact(x, y)))),
                edges: Edges::all(Edge::Dirichlet),
            })
        }
        ProblemKind::Burgers2DShear => BenchmarkProblem::Scalar2D(Problem2D {
            kind,
            law: Arc::new(ShearBurgers),
            domain: ((0.0, 1.0), (0.0, 1.0)),
            default_cells: (80, 80),
            initial: scalar2(|x, _| 1.5 - 2.0 * x),
            boundary: scalar2(shear_exact),
            exact: Some(Arc::new(|x, y| Some(State::<1>::new(shear_exact(x, y))))),
            edges: Edges {
                left: Edge::Dirichlet,
                right: Edge::Dirichlet,
                bottom: Edge::Dirichlet,
                top: Edge::Outflow,
            },
        }),
        ProblemKind::CauchyRiemann => {
            let data = QuadrantData::default();
            let planar: Field2D<2> = Arc::new(move |x, y| data.planar_solution(x, y));
            BenchmarkProblem::CauchyRiemann(Problem2D {
                kind,
                law: Arc::new(CauchyRiemann),
                domain: ((-2.0, 2.0), (-2.0, 2.0)),
                default_cells: (80, 80),
                initial: planar.clone(),
                boundary: planar,
                exact: Some(Arc::new(move |x, y| data.exact(x, y))),
                edges: Edges::all(Edge::Dirichlet),
            })
        }
        ProblemKind::ShockReflection => {
            let [rt, ut, vt, pt] = REFLECTION_TOP;
            let top = conservative_2d(GAMMA, rt, ut, vt, pt);
            let [ri, ui, vi, pi] = reflection_inflow();
            let inflow = conservative_2d(GAMMA, ri, ui, vi, pi);
            let field: Field2D<4> = Arc::new(move |_, y| if y >= 1.0 { top } else { inflow });
            BenchmarkProblem::Euler2D(Problem2D {
                kind,
                law: Arc::new(Euler2D::default()),
                domain: ((0.0, 4.0), (0.0, 1.0)),
                default_cells: (160, 40),
                initial: field.clone(),
                boundary: field,
                exact: None,
                edges: Edges {
                    left: Edge::Dirichlet,
                    right: Edge::Outflow,
                    bottom: Edge::Reflective,
                    top: Edge::Dirichlet,
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::euler::pressure_2d;

    #[test]
    fn names_round_trip() {
        for (kind, name) in ProblemKind::ALL.iter().zip(PROBLEM_NAMES) {
            assert_eq!(kind.name(), name);
            assert_eq!(name.parse::<ProblemKind>().unwrap(), *kind);
            assert_eq!(registry_lookup(name).unwrap().kind(), *kind);
        }
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = registry_lookup("burgers3d").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("burgers3d"));
        for name in PROBLEM_NAMES {
            assert!(msg.contains(name));
        }
    }

    #[test]
    fn smooth_burgers_setup() {
        let BenchmarkProblem::Scalar1D(p) = registry_lookup("burgers1d-smooth").unwrap() else {
            panic!("wrong variant");
        };
        assert_eq!(p.domain, (0.0, PI));
        assert!(((p.initial)(PI / 2.0)[0] - 2.0).abs() < 1e-15);
        assert_eq!(p.left, Boundary1D::Dirichlet(State::<1>::new(0.0)));
        assert_eq!(p.right, Boundary1D::Dirichlet(State::<1>::new(0.0)));
    }

    #[test]
    fn smooth_rotated_burgers_setup() {
        let BenchmarkProblem::Scalar2D(p) = registry_lookup("burgers2d-smooth").unwrap() else {
            panic!("wrong variant");
        };
        let side = PI / 2f64.sqrt();
        assert!((p.domain.0 .1 - side).abs() < 1e-15 && (p.domain.1 .1 - side).abs() < 1e-15);
        let r = (0.3f64 + 0.4) / 2f64.sqrt();
        assert!(((p.initial)(0.3, 0.4)[0] - 1.2 * r.sin()).abs() < 1e-15);
    }

    #[test]
    fn reflection_top_state() {
        let BenchmarkProblem::Euler2D(p) = registry_lookup("shock-reflection").unwrap() else {
            panic!("wrong variant");
        };
        let w = (p.boundary)(2.0, 1.0);
        assert!((w[0] - 1.69997).abs() < 1e-15);
        assert!((w[1] / w[0] - 2.61934).abs() < 1e-14);
        assert!((w[2] / w[0] + 0.50632).abs() < 1e-14);
        assert!((pressure_2d(GAMMA, &w) - 1.52819).abs() < 1e-12);
        let inflow = (p.initial)(1.0, 0.5);
        assert!((pressure_2d(GAMMA, &inflow) - 1.0 / GAMMA).abs() < 1e-14);
        assert_eq!(p.edges.bottom, Edge::Reflective);
    }

    #[test]
    fn shock_abscissae() {
        assert!((trig_burgers_shock(0.5) - 2.0944).abs() < 1e-4);
        assert!((trig_burgers_shock(0.5) - 2.0 * PI / 3.0).abs() < 1e-14);
        assert!((source_burgers_shock() - 0.1486).abs() < 1e-4);
        assert!((1.0 - source_burgers_shock() - 0.8514).abs() < 1e-4);
    }

    #[test]
    fn shock_branch_mass_balance() {
        // ∫₀^π u dx = 2β for the steady state with shock at x_s.
        let xs = trig_burgers_shock(0.5);
        let mass = (1.0 - xs.cos()) + (PI.cos() - xs.cos());
        assert!((mass - 1.0).abs() < 1e-14);
    }

    #[test]
    fn source_burgers_exact_jump_is_rankine_hugoniot() {
        let xs = source_burgers_shock();
        let left = 1.0 - (PI * xs).sin();
        let right = source_burgers_exact(xs);
        assert!((left + right).abs() < 1e-14);
    }

    #[test]
    fn shear_exact_values() {
        assert_eq!(shear_exact(0.5, 0.25), 1.0);
        assert_eq!(shear_exact(0.87, 0.75), 1.5);
        assert_eq!(shear_exact(0.875, 0.75), -0.5);
        assert_eq!(shear_exact(0.3, 0.0), 0.9);
        assert_eq!(shear_exact(0.0, 0.9), 1.5);
        assert_eq!(shear_exact(1.0, 0.3), -0.5);
    }

    #[test]
    fn components_match_data() {
        for name in PROBLEM_NAMES {
            let p = registry_lookup(name).unwrap();
            let m = match &p {
                BenchmarkProblem::Scalar1D(q) => (q.initial)(0.1).len(),
                BenchmarkProblem::ShallowWater(q) => (q.initial)(0.1).len(),
                BenchmarkProblem::Nozzle(q) => (q.initial)(0.1).len(),
                BenchmarkProblem::Scalar2D(q) => (q.boundary)(0.1, 0.1).len(),
                BenchmarkProblem::CauchyRiemann(q) => (q.boundary)(0.1, 0.1).len(),
                BenchmarkProblem::Euler2D(q) => (q.boundary)(0.1, 0.1).len(),
            };
            assert_eq!(m, p.components(), "{name}");
        }
    }
}
