//! Pseudo-time marching to steady state: nodal rates assembled from cell
//! distributions, third-order TVD Runge–Kutta, CFL time step and the L1
//! residue monitor.

use thiserror::Error;

use crate::models::State;
use crate::rd::{RdError, RdParameters};

mod scheme1d;
mod scheme2d;

pub use scheme1d::Scheme1D;
pub use scheme2d::Scheme2D;

/// Added to wave speeds so a state at rest still gives a finite time step.
pub const SPEED_FLOOR: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Rd(#[from] RdError),
    #[error("diverged at iteration {iter}: residue {residue:e} exceeds {limit:e}")]
    Diverged { iter: usize, residue: f64, limit: f64 },
    #[error("non-finite state at iteration {iter}")]
    NonFinite { iter: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub cfl: f64,
    pub max_iters: usize,
    pub residue_tol: f64,
    /// Abort once the residue exceeds this multiple of the initial residue.
    pub divergence_factor: f64,
    pub rd: RdParameters,
}

impl SolverConfig {
    pub fn default_1d() -> Self {
        Self {
            cfl: 0.3,
            max_iters: 200_000,
            residue_tol: 1e-12,
            divergence_factor: 1e6,
            rd: RdParameters::default(),
        }
    }

    pub fn default_2d() -> Self {
        Self {
            max_iters: 500_000,
            ..Self::default_1d()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.cfl) {
            return Err(SolverError::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if !positive(self.residue_tol) {
            return Err(SolverError::Config(format!(
                "residue tolerance must be positive, got {}",
                self.residue_tol
            )));
        }
        if !(self.divergence_factor > 1.0) {
            return Err(SolverError::Config(format!(
                "divergence factor must exceed 1, got {}",
                self.divergence_factor
            )));
        }
        if !(self.rd.roe.epsilon > 0.0) {
            return Err(SolverError::Config("Roe fix threshold must be positive".into()));
        }
        Ok(())
    }
}

/// A spatial discretization on a fixed grid: nodal rates `du/dt`, the dual
/// measures that weight them, the CFL time step and boundary enforcement.
pub trait Scheme<const M: usize> {
    fn duals(&self) -> &[f64];

    /// Rates at every node. Pinned nodes get zero.
    fn rates(&self, u: &[State<M>], out: &mut Vec<State<M>>) -> Result<(), RdError>;

    fn time_step(&self, u: &[State<M>], cfl: f64) -> f64;

    /// Resets pinned nodes to their boundary data.
    fn enforce(&self, u: &mut [State<M>]);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueEntry {
    pub iter: usize,
    pub pseudo_time: f64,
    pub residue: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResidueHistory {
    pub entries: Vec<ResidueEntry>,
}

impl ResidueHistory {
    pub fn push(&mut self, entry: ResidueEntry) {
        debug_assert!(self.entries.last().map_or(true, |e| e.iter < entry.iter));
        self.entries.push(entry);
    }

    pub fn last(&self) -> Option<&ResidueEntry> {
        self.entries.last()
    }

    pub fn initial(&self) -> Option<f64> {
        self.entries.first().map(|e| e.residue)
    }

    pub fn min_residue(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.residue).reduce(f64::min)
    }

    /// First iteration at which the residue is at or below `level`.
    pub fn iterations_to(&self, level: f64) -> Option<usize> {
        self.entries.iter().find(|e| e.residue <= level).map(|e| e.iter)
    }

    /// Geometric mean of the residue over the trailing `fraction` of the run.
    pub fn plateau(&self, fraction: f64) -> Option<f64> {
        let n = self.entries.len();
        let take = ((n as f64 * fraction).ceil() as usize).clamp(1, n.max(1));
        let tail = self.entries.get(n.checked_sub(take)?..)?;
        let logs: Vec<f64> = tail.iter().map(|e| e.residue.max(f64::MIN_POSITIVE).ln()).collect();
        Some((logs.iter().sum::<f64>() / logs.len() as f64).exp())
    }
}

/// `Σ |C_i|·mean_c |rate_i,c| / Σ |C_i|`.
pub fn l1_residue<const M: usize>(rates: &[State<M>], duals: &[f64]) -> f64 {
    assert_eq!(rates.len(), duals.len(), "one dual measure per node");
    let total: f64 = duals.iter().sum();
    let weighted: f64 = rates
        .iter()
        .zip(duals)
        .map(|(r, d)| d * r.iter().map(|v| v.abs()).sum::<f64>() / M as f64)
        .sum();
    weighted / total
}

fn axpy<const M: usize>(out: &mut Vec<State<M>>, u: &[State<M>], a: f64, k: impl Fn(usize) -> State<M>) {
    out.clear();
    out.extend(u.iter().enumerate().map(|(i, ui)| ui + k(i) * a));
}

/// Reusable stage buffers for [`rk3_step_with`].
#[derive(Debug, Clone, Default)]
pub struct Rk3Buffers<const M: usize> {
    stage: Vec<State<M>>,
    l1: Vec<State<M>>,
    l2: Vec<State<M>>,
}

/// One Shu–Osher TVD-RK3 step given the rate `l0 = L(u)`, in increment form:
/// `u¹ = u + Δt L⁰`, `u² = u + Δt (L⁰ + L¹)/4`, `uⁿ⁺¹ = u + Δt (L⁰ + L¹ + 4L²)/6`.
/// This equals the convex-combination form up to rounding and leaves `u`
/// bit-for-bit unchanged when every rate is zero. `project` is applied after
/// every stage.
pub fn rk3_step_with<const M: usize, E>(
    u: &mut Vec<State<M>>,
    l0: &[State<M>],
    dt: f64,
    buffers: &mut Rk3Buffers<M>,
    mut rate: impl FnMut(&[State<M>], &mut Vec<State<M>>) -> Result<(), E>,
    project: impl Fn(&mut [State<M>]),
) -> Result<(), E> {
    let Rk3Buffers { stage, l1, l2 } = buffers;
    axpy(stage, u, dt, |i| l0[i]);
    project(stage);
    rate(stage, l1)?;
    axpy(stage, u, dt / 4.0, |i| l0[i] + l1[i]);
    project(stage);
    rate(stage, l2)?;
    let next: Vec<State<M>> = u
        .iter()
        .enumerate()
        .map(|(i, ui)| ui + (l0[i] + l1[i] + l2[i] * 4.0) * (dt / 6.0))
        .collect();
    *u = next;
    project(u);
    Ok(())
}

/// One TVD-RK3 step of `u' = L(u)`.
pub fn rk3_step<const M: usize, E>(
    u: &[State<M>],
    dt: f64,
    mut rate: impl FnMut(&[State<M>], &mut Vec<State<M>>) -> Result<(), E>,
) -> Result<Vec<State<M>>, E> {
    let mut l0 = Vec::new();
    rate(u, &mut l0)?;
    let mut next = u.to_vec();
    rk3_step_with(&mut next, &l0, dt, &mut Rk3Buffers::default(), rate, |_| {})?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState<const M: usize> {
    pub state: Vec<State<M>>,
    pub history: ResidueHistory,
    /// Whether the residue reached the tolerance before `max_iters`.
    pub converged: bool,
}

impl<const M: usize> SteadyState<M> {
    pub fn iterations(&self) -> usize {
        self.history.last().map_or(0, |e| e.iter)
    }

    pub fn final_residue(&self) -> f64 {
        self.history.last().map_or(f64::NAN, |e| e.residue)
    }
}

/// Marches `u0` with TVD-RK3 until the L1 residue drops to the tolerance or
/// the iteration budget runs out. Entry `n` of the history is the residue of
/// the rates at `uⁿ`.
pub fn march_to_steady<const M: usize, S: Scheme<M>>(
    scheme: &S,
    u0: Vec<State<M>>,
    config: &SolverConfig,
) -> Result<SteadyState<M>, SolverError> {
    config.validate()?;
    let mut u = u0;
    assert_eq!(u.len(), scheme.duals().len(), "state length must match the grid");
    scheme.enforce(&mut u);
    let mut history = ResidueHistory::default();
    let mut l0 = Vec::with_capacity(u.len());
    let mut buffers = Rk3Buffers::default();
    let mut time = 0.0;
    let mut limit = f64::INFINITY;
    for iter in 0..=config.max_iters {
        if !u.iter().all(|s| s.iter().all(|v| v.is_finite())) {
            return Err(SolverError::NonFinite { iter });
        }
        scheme.rates(&u, &mut l0)?;
        let residue = l1_residue(&l0, scheme.duals());
        history.push(ResidueEntry {
            iter,
            pseudo_time: time,
            residue,
        });
        if !residue.is_finite() {
            return Err(SolverError::NonFinite { iter });
        }
        if iter == 0 {
            limit = config.divergence_factor * residue.max(f64::MIN_POSITIVE);
        }
        if residue <= config.residue_tol {
            return Ok(SteadyState {
                state: u,
                history,
                converged: true,
            });
        }
        if residue > limit {
            return Err(SolverError::Diverged { iter, residue, limit });
        }
        if iter == config.max_iters {
            break;
        }
        let dt = scheme.time_step(&u, config.cfl);
        rk3_step_with(
            &mut u,
            &l0,
            dt,
            &mut buffers,
            |s, out| scheme.rates(s, out),
            |s| scheme.enforce(s),
        )?;
        time += dt;
    }
    Ok(SteadyState {
        state: u,
        history,
        converged: false,
    })
}
