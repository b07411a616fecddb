//! CSV output of nodal fields, cross-sections and residue histories.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::mesh::{Grid1D, Grid2D};
use crate::models::State;
use crate::solver::ResidueHistory;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: usize, reason: String },
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> OutputError + '_ {
    move |source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Node values stored node-major: `values[k·components + c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalField {
    pub components: usize,
    pub values: Vec<f64>,
}

impl NodalField {
    pub fn from_states<const M: usize>(u: &[State<M>]) -> Self {
        Self {
            components: M,
            values: u.iter().flat_map(|s| s.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.components
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, k: usize) -> &[f64] {
        &self.values[k * self.components..(k + 1) * self.components]
    }

    pub fn component(&self, c: usize) -> Vec<f64> {
        self.values.iter().skip(c).step_by(self.components).copied().collect()
    }
}

/// Seventeen significant digits, enough to read back the same `f64`.
fn num(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String cannot fail");
}

fn header(out: &mut String, coords: &[&str], components: usize) {
    let comps: Vec<String> = (0..components).map(|c| format!("comp{c}")).collect();
    out.push_str(&[coords.join(","), comps.join(",")].join(","));
    out.push('\n');
}

fn row(out: &mut String, coords: &[f64], values: &[f64]) {
    for (i, v) in coords.iter().chain(values).enumerate() {
        if i > 0 {
            out.push(',');
        }
        num(out, *v);
    }
    out.push('\n');
}

fn write_file(path: &Path, text: &str) -> Result<(), OutputError> {
    fs::write(path, text).map_err(io_error(path))
}

/// `x,comp0,...` for each node.
pub fn solution_csv_1d(grid: &Grid1D, field: &NodalField) -> String {
    let mut out = String::new();
    header(&mut out, &["x"], field.components);
    for (k, &x) in grid.nodes().iter().enumerate() {
        row(&mut out, &[x], field.node(k));
    }
    out
}

/// `x,y,comp0,...` for each node, row-major with `x` varying fastest.
pub fn contour_csv(grid: &Grid2D, field: &NodalField) -> String {
    let mut out = String::new();
    header(&mut out, &["x", "y"], field.components);
    for j in 0..=grid.ny() {
        for i in 0..=grid.nx() {
            let (x, y) = grid.coords(i, j);
            row(&mut out, &[x, y], field.node(grid.index(i, j)));
        }
    }
    out
}

pub fn write_solution_1d(path: &Path, grid: &Grid1D, field: &NodalField) -> Result<(), OutputError> {
    write_file(path, &solution_csv_1d(grid, field))
}

pub fn contour_dump(path: &Path, grid: &Grid2D, field: &NodalField) -> Result<(), OutputError> {
    write_file(path, &contour_csv(grid, field))
}

/// Coordinates and values of a file written by [`contour_dump`].
pub fn read_contour(path: &Path) -> Result<(Vec<(f64, f64)>, NodalField), OutputError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    let parse_err = |line: usize, reason: String| OutputError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| parse_err(1, "empty file".into()))?;
    let columns = head.split(',').count();
    if columns < 3 || !head.starts_with("x,y,") {
        return Err(parse_err(1, format!("unexpected header `{head}`")));
    }
    let mut coords = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let fields: Vec<f64> = line
            .split(',')
            .map(|v| v.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| parse_err(idx + 2, e.to_string()))?;
        if fields.len() != columns {
            return Err(parse_err(idx + 2, format!("expected {columns} columns, got {}", fields.len())));
        }
        coords.push((fields[0], fields[1]));
        values.extend_from_slice(&fields[2..]);
    }
    Ok((
        coords,
        NodalField {
            components: columns - 2,
            values,
        },
    ))
}

/// Node row nearest to `y`, with its abscissae and values.
pub fn section(grid: &Grid2D, field: &NodalField, y: f64) -> (usize, Vec<f64>, NodalField) {
    let j = grid.y.nearest_node(y);
    let xs = grid.x.nodes().to_vec();
    let values = (0..=grid.nx())
        .flat_map(|i| field.node(grid.index(i, j)).to_vec())
        .collect();
    (
        j,
        xs,
        NodalField {
            components: field.components,
            values,
        },
    )
}

/// The cross-section at `y` as `x,comp0,...`.
pub fn write_section(path: &Path, grid: &Grid2D, field: &NodalField, y: f64) -> Result<(), OutputError> {
    let (_, xs, values) = section(grid, field, y);
    let mut out = String::new();
    header(&mut out, &["x"], values.components);
    for (k, &x) in xs.iter().enumerate() {
        row(&mut out, &[x], values.node(k));
    }
    write_file(path, &out)
}

pub fn residue_csv(history: &ResidueHistory) -> String {
    let mut out = String::from("iter,pseudo_time,l1_residue\n");
    for e in &history.entries {
        write!(out, "{},", e.iter).expect("writing to a String cannot fail");
        num(&mut out, e.pseudo_time);
        out.push(',');
        num(&mut out, e.residue);
        out.push('\n');
    }
    out
}

pub fn write_residue(path: &Path, history: &ResidueHistory) -> Result<(), OutputError> {
    write_file(path, &residue_csv(history))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), OutputError> {
    write_file(path, text)
}

pub fn create_dir(path: &Path) -> Result<(), OutputError> {
    fs::create_dir_all(path).map_err(io_error(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::ResidueEntry;

    #[test]
    fn contour_of_one_cell_has_four_rows() {
        let grid = Grid2D::uniform((0.0, 1.0, 1), (0.0, 1.0, 1));
        // a single cell is below the mesh minimum, so use the smallest legal grid
        assert!(grid.is_err());
        let grid = Grid2D::uniform((0.0, 1.0, 4), (0.0, 1.0, 4)).unwrap();
        let field = NodalField::from_states(&vec![State::<2>::new(1.0, 2.0); 25]);
        let csv = contour_csv(&grid, &field);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,comp0,comp1");
        assert_eq!(lines.len(), 26);
        assert!(lines[2].starts_with("2.5000000000000000e-1,0.0000000000000000e0,"));
    }

    #[test]
    fn contour_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("contour.csv");
        let grid = Grid2D::uniform((0.0, 0.3, 6), (-1.0, 1.0 / 3.0, 5)).unwrap();
        let states: Vec<State<3>> = (0..grid.node_count())
            .map(|k| State::<3>::new((k as f64).sqrt(), 1.0 / (k as f64 + 3.0), -(k as f64).exp2() * 1e-300))
            .collect();
        let field = NodalField::from_states(&states);
        contour_dump(&path, &grid, &field).unwrap();
        let (coords, back) = read_contour(&path).unwrap();
        assert_eq!(back, field);
        assert_eq!(coords[7], grid.coords(0, 1));
    }

    #[test]
    fn read_errors_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        fs::write(&path, "x,y,comp0\n0,0,1\n0,1\n").unwrap();
        match read_contour(&path) {
            Err(OutputError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_contour(&dir.path().join("missing.csv")), Err(OutputError::Io { .. })));
    }

    #[test]
    fn sections_and_residue() {
        let grid = Grid2D::uniform((0.0, 1.0, 4), (0.0, 1.0, 4)).unwrap();
        let states: Vec<State<1>> = (0..25).map(|k| State::<1>::new(k as f64)).collect();
        let (j, xs, values) = section(&grid, &NodalField::from_states(&states), 0.74);
        assert_eq!(j, 3);
        assert_eq!(xs.len(), 5);
        assert_eq!(values.component(0), vec![15.0, 16.0, 17.0, 18.0, 19.0]);

        let mut h = ResidueHistory::default();
        h.push(ResidueEntry {
            iter: 0,
            pseudo_time: 0.0,
            residue: 0.5,
        });
        assert_eq!(
            residue_csv(&h),
            "iter,pseudo_time,l1_residue\n0,0.0000000000000000e0,5.0000000000000000e-1\n"
        );
    }
}
