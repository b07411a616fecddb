//! Line-oriented `key = value` run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::models::ProblemKind;
use crate::rd::{AverageState, Direction, RdParameters};
use crate::solver::SolverConfig;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("no problem given")]
    MissingProblem,
    #[error("{0}")]
    Invalid(String),
}

const KEYS: [&str; 11] = [
    "problem",
    "n",
    "nx",
    "ny",
    "cfl",
    "max_iters",
    "tol",
    "out_dir",
    "average_state",
    "direction",
    "sections",
];

/// Settings of one run. Unset fields fall back to per-problem defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub problem: Option<ProblemKind>,
    pub n: Option<usize>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub average_state: Option<AverageState>,
    pub direction: Option<Direction>,
    /// Abscissae `y` of horizontal cross-sections written for 2D runs.
    pub sections: Option<Vec<f64>>,
}

fn bad(key: &str, value: &str, reason: impl ToString) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| bad(key, value, e))
}

pub fn parse_average(value: &str) -> Result<AverageState, ConfigError> {
    match value {
        "arithmetic" => Ok(AverageState::Arithmetic),
        "roe" => Ok(AverageState::Roe),
        _ => Err(bad("average_state", value, "expected `arithmetic` or `roe`")),
    }
}

/// `model`, `x`, `y` or a vector `a,b`.
pub fn parse_direction(value: &str) -> Result<Direction, ConfigError> {
    match value {
        "model" => return Ok(Direction::Model),
        "x" => return Ok(Direction::Fixed([1.0, 0.0])),
        "y" => return Ok(Direction::Fixed([0.0, 1.0])),
        _ => {}
    }
    let parts = parse_list("direction", value)?;
    match parts[..] {
        [a, b] if a.is_finite() && b.is_finite() && a.hypot(b) > 0.0 => Ok(Direction::Fixed([a, b])),
        _ => Err(bad("direction", value, "expected `model`, `x`, `y` or a nonzero vector `a,b`")),
    }
}

pub fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    value.split(',').map(|v| parse::<f64>(key, v.trim())).collect()
}

impl RunConfig {
    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<&str> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    text: content.to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(&known) = KEYS.iter().find(|k| **k == key) else {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            };
            if seen.contains(&known) {
                return Err(ConfigError::Duplicate {
                    line,
                    key: key.to_string(),
                });
            }
            seen.push(known);
            cfg.set(known, value)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "problem" => self.problem = Some(parse(key, value)?),
            "n" => self.n = Some(parse(key, value)?),
            "nx" => self.nx = Some(parse(key, value)?),
            "ny" => self.ny = Some(parse(key, value)?),
            "cfl" => self.cfl = Some(parse(key, value)?),
            "max_iters" => self.max_iters = Some(parse(key, value)?),
            "tol" => self.tol = Some(parse(key, value)?),
            "out_dir" => self.out_dir = Some(PathBuf::from(value)),
            "average_state" => self.average_state = Some(parse_average(value)?),
            "direction" => self.direction = Some(parse_direction(value)?),
            "sections" => self.sections = Some(parse_list(key, value)?),
            _ => unreachable!("key list and setter disagree on `{key}`"),
        }
        Ok(())
    }

    /// Fields set in `other` replace those of `self`.
    pub fn merged(self, other: RunConfig) -> RunConfig {
        RunConfig {
            problem: other.problem.or(self.problem),
            n: other.n.or(self.n),
            nx: other.nx.or(self.nx),
            ny: other.ny.or(self.ny),
            cfl: other.cfl.or(self.cfl),
            max_iters: other.max_iters.or(self.max_iters),
            tol: other.tol.or(self.tol),
            out_dir: other.out_dir.or(self.out_dir),
            average_state: other.average_state.or(self.average_state),
            direction: other.direction.or(self.direction),
            sections: other.sections.or(self.sections),
        }
    }

    pub fn problem(&self) -> Result<ProblemKind, ConfigError> {
        self.problem.ok_or(ConfigError::MissingProblem)
    }

    pub fn solver_config(&self, two_d: bool) -> Result<SolverConfig, ConfigError> {
        let base = if two_d {
            SolverConfig::default_2d()
        } else {
            SolverConfig::default_1d()
        };
        let config = SolverConfig {
            cfl: self.cfl.unwrap_or(base.cfl),
            max_iters: self.max_iters.unwrap_or(base.max_iters),
            residue_tol: self.tol.unwrap_or(base.residue_tol),
            rd: RdParameters {
                average: self.average_state.unwrap_or_default(),
                direction: self.direction.unwrap_or_default(),
                ..base.rd
            },
            ..base
        };
        config.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(config)
    }

    /// Cell count of a 1D run.
    pub fn cells_1d(&self, default: usize) -> Result<usize, ConfigError> {
        if self.nx.is_some() || self.ny.is_some() {
            return Err(ConfigError::Invalid("nx/ny apply to 2D problems; use n".into()));
        }
        Ok(self.n.unwrap_or(default))
    }

    /// Cell counts of a 2D run: `n` sets both, `nx`/`ny` override.
    pub fn cells_2d(&self, default: (usize, usize)) -> Result<(usize, usize), ConfigError> {
        let (dx, dy) = self.n.map_or(default, |n| (n, n));
        Ok((self.nx.unwrap_or(dx), self.ny.unwrap_or(dy)))
    }
}
