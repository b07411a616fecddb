//! Single runs and convergence studies over the problem registry.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::mesh::{Grid1D, Grid2D};
use crate::models::{registry_lookup, BenchmarkProblem, Problem1D, Problem2D, ProblemKind};
use crate::solver::{march_to_steady, ResidueHistory, Scheme, Scheme1D, Scheme2D};

use super::analysis::{error_norms, orders, shock_locator};
use super::config::{ConfigError, RunConfig};
use super::output::{self, NodalField, OutputError};
use super::HarnessError;

/// Cross-sections written by default for a 2D problem.
pub fn default_sections(kind: ProblemKind) -> Vec<f64> {
    match kind {
        ProblemKind::Burgers2DShear => vec![0.25, 0.5, 0.75],
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    OneD { grid: Grid1D, field: NodalField },
    TwoD { grid: Grid2D, field: NodalField },
}

impl Solution {
    pub fn field(&self) -> &NodalField {
        match self {
            Solution::OneD { field, .. } | Solution::TwoD { field, .. } => field,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub problem: ProblemKind,
    /// `[n]` in 1D, `[nx, ny]` in 2D.
    pub cells: Vec<usize>,
    /// L1 and maximum error of the first component, where an exact solution is known.
    pub errors: Option<(f64, f64)>,
    pub final_residue: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Shock abscissa of the first component (1D runs only).
    pub shock: Option<f64>,
    pub wall_time: Duration,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        writeln!(f, "problem      {}", self.problem)?;
        writeln!(f, "cells        {}", cells.join(" x "))?;
        match self.errors {
            Some((l1, linf)) => writeln!(f, "errors       L1 {l1:.6e}  Linf {linf:.6e}")?,
            None => writeln!(f, "errors       (no exact solution)")?,
        }
        writeln!(
            f,
            "residue      {:.6e} after {} iterations ({})",
            self.final_residue,
            self.iterations,
            if self.converged { "converged" } else { "iteration limit" }
        )?;
        match self.shock {
            Some(x) => writeln!(f, "shock        x = {x:.6}")?,
            None if self.cells.len() == 1 => writeln!(f, "shock        none")?,
            None => {}
        }
        write!(f, "wall time    {:.3} s", self.wall_time.as_secs_f64())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: RunReport,
    pub solution: Solution,
    pub history: ResidueHistory,
}

fn solve_1d<const M: usize>(problem: &Problem1D<M>, cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let cells = cfg.cells_1d(problem.default_cells)?;
    if cfg.sections.as_ref().is_some_and(|s| !s.is_empty()) {
        return Err(ConfigError::Invalid("sections apply to 2D problems".into()).into());
    }
    let solver = cfg.solver_config(false)?;
    let start = Instant::now();
    let (scheme, u0) = Scheme1D::for_problem(problem, cells, solver.rd)?;
    let run = march_to_steady(&scheme, u0, &solver)?;
    let wall_time = start.elapsed();
    let grid = scheme.grid().clone();
    let field = NodalField::from_states(&run.state);
    let first = field.component(0);
    let errors = problem.exact.as_ref().and_then(|exact| {
        let e: Vec<Option<f64>> = grid.nodes().iter().map(|&x| Some(exact(x)[0])).collect();
        error_norms(&first, &e, scheme.duals())
    });
    let report = RunReport {
        problem: problem.kind,
        cells: vec![cells],
        errors,
        final_residue: run.final_residue(),
        iterations: run.iterations(),
        converged: run.converged,
        shock: shock_locator(&first, grid.nodes()),
        wall_time,
    };
    Ok(RunOutcome {
        report,
        solution: Solution::OneD { grid, field },
        history: run.history,
    })
}

fn solve_2d<const M: usize>(problem: &Problem2D<M>, cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let cells = cfg.cells_2d(problem.default_cells)?;
    let solver = cfg.solver_config(true)?;
    let start = Instant::now();
    let (scheme, u0) = Scheme2D::for_problem(problem, cells, solver.rd)?;
    let run = march_to_steady(&scheme, u0, &solver)?;
    let wall_time = start.elapsed();
    let grid = scheme.grid().clone();
    let field = NodalField::from_states(&run.state);
    let errors = problem.exact.as_ref().and_then(|exact| {
        let mut e = Vec::with_capacity(grid.node_count());
        for j in 0..=grid.ny() {
            for i in 0..=grid.nx() {
                let (x, y) = grid.coords(i, j);
                e.push(exact(x, y).map(|s| s[0]));
            }
        }
        error_norms(&field.component(0), &e, scheme.duals())
    });
    let report = RunReport {
        problem: problem.kind,
        cells: vec![cells.0, cells.1],
        errors,
        final_residue: run.final_residue(),
        iterations: run.iterations(),
        converged: run.converged,
        shock: None,
        wall_time,
    };
    Ok(RunOutcome {
        report,
        solution: Solution::TwoD { grid, field },
        history: run.history,
    })
}

/// Runs the configured problem to steady state without writing files.
pub fn solve(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let problem = registry_lookup(cfg.problem()?.name()).expect("registry covers every problem kind");
    match &problem {
        BenchmarkProblem::Scalar1D(p) => solve_1d(p, cfg),
        BenchmarkProblem::ShallowWater(p) => solve_1d(p, cfg),
        BenchmarkProblem::Nozzle(p) => solve_1d(p, cfg),
        BenchmarkProblem::Scalar2D(p) => solve_2d(p, cfg),
        BenchmarkProblem::CauchyRiemann(p) => solve_2d(p, cfg),
        BenchmarkProblem::Euler2D(p) => solve_2d(p, cfg),
    }
}

pub fn output_dir(cfg: &RunConfig, kind: ProblemKind) -> PathBuf {
    cfg.out_dir.clone().unwrap_or_else(|| Path::new("out").join(kind.name()))
}

/// Writes `solution.csv`, `residue.csv` and, in 2D, `contour.csv` and one
/// `section_y<y>.csv` per requested cross-section. Returns the paths written.
pub fn write_outputs(outcome: &RunOutcome, dir: &Path, sections: &[f64]) -> Result<Vec<PathBuf>, OutputError> {
    output::create_dir(dir)?;
    let mut written = Vec::new();
    let residue = dir.join("residue.csv");
    output::write_residue(&residue, &outcome.history)?;
    written.push(residue);
    let solution = dir.join("solution.csv");
    match &outcome.solution {
        Solution::OneD { grid, field } => {
            output::write_solution_1d(&solution, grid, field)?;
            written.push(solution);
        }
        Solution::TwoD { grid, field } => {
            output::contour_dump(&solution, grid, field)?;
            written.push(solution);
            let contour = dir.join("contour.csv");
            output::contour_dump(&contour, grid, field)?;
            written.push(contour);
            for &y in sections {
                let path = dir.join(format!("section_y{y}.csv"));
                output::write_section(&path, grid, field, y)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

/// Solves and writes the output files.
pub fn run(cfg: &RunConfig) -> Result<(RunOutcome, Vec<PathBuf>), HarnessError> {
    let kind = cfg.problem()?;
    let outcome = solve(cfg)?;
    let sections = cfg.sections.clone().unwrap_or_else(|| default_sections(kind));
    let written = write_outputs(&outcome, &output_dir(cfg, kind), &sections)?;
    Ok((outcome, written))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
    pub iterations: usize,
    pub final_residue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub problem: ProblemKind,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,l1,l1_order,linf,linf_order,iterations,final_residue\n");
        let opt = |o: Option<f64>| o.map_or(String::new(), |v| format!("{v:.16e}"));
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.16e},{},{:.16e},{},{},{:.16e}\n",
                r.n,
                r.l1,
                opt(r.l1_order),
                r.linf,
                opt(r.linf_order),
                r.iterations,
                r.final_residue
            ));
        }
        out
    }
}

impl fmt::Display for ConvergenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = if self.problem.is_2d() { "N x N" } else { "N" };
        writeln!(
            f,
            "{label:>11}  {:>12}  {:>6}  {:>12}  {:>6}  {:>9}",
            "L1 error", "order", "Linf error", "order", "iters"
        )?;
        let opt = |o: Option<f64>| o.map_or("-".to_string(), |v| format!("{v:.2}"));
        for r in &self.rows {
            let n = if self.problem.is_2d() {
                format!("{0} x {0}", r.n)
            } else {
                r.n.to_string()
            };
            writeln!(
                f,
                "{n:>11}  {:>12.4e}  {:>6}  {:>12.4e}  {:>6}  {:>9}",
                r.l1,
                opt(r.l1_order),
                r.linf,
                opt(r.linf_order),
                r.iterations
            )?;
        }
        Ok(())
    }
}

/// Errors and observed orders over dyadic refinements. In 2D each level `N`
/// means an `N × N` grid. `base` supplies everything but the grid size.
pub fn convergence_study(
    kind: ProblemKind,
    levels: &[usize],
    base: &RunConfig,
) -> Result<ConvergenceTable, HarnessError> {
    if levels.is_empty() {
        return Err(HarnessError::Levels("no levels given".into()));
    }
    if let Some(w) = levels.windows(2).find(|w| w[1] != 2 * w[0]) {
        return Err(HarnessError::Levels(format!(
            "levels must double at each step, got {} then {}",
            w[0], w[1]
        )));
    }
    let mut results = Vec::with_capacity(levels.len());
    for &n in levels {
        let cfg = RunConfig {
            problem: Some(kind),
            n: Some(n),
            nx: None,
            ny: None,
            ..base.clone()
        };
        let outcome = solve(&cfg)?;
        let (l1, linf) = outcome.report.errors.ok_or(HarnessError::MissingExact(kind))?;
        results.push((n, l1, linf, outcome.report.iterations, outcome.report.final_residue));
    }
    let l1_orders = orders(&results.iter().map(|r| r.1).collect::<Vec<_>>());
    let linf_orders = orders(&results.iter().map(|r| r.2).collect::<Vec<_>>());
    let rows = results
        .into_iter()
        .zip(l1_orders.into_iter().zip(linf_orders))
        .map(|((n, l1, linf, iterations, final_residue), (l1_order, linf_order))| ConvergenceRow {
            n,
            l1,
            l1_order,
            linf,
            linf_order,
            iterations,
            final_residue,
        })
        .collect();
    Ok(ConvergenceTable { problem: kind, rows })
}
