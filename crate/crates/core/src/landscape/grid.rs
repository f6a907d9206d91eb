//! Lattice evaluation and the grid dump CSV format.

use super::{Domain, Landscape, Point};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// A row-major lattice of objective values over a box: every axis carries
/// `resolution` samples including both endpoints; the last axis varies
/// fastest.
#[derive(Clone, Debug)]
pub struct Grid<F> {
    domain: Domain<F>,
    resolution: usize,
    values: Vec<F>,
}

impl<F: Real> Grid<F> {
    pub fn domain(&self) -> &Domain<F> {
        &self.domain
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Lattice coordinate `idx` (0-based) on `axis`; endpoints are exact.
    pub fn coord(&self, axis: usize, idx: usize) -> F {
        let t = real::<F>(idx as f64 / (self.resolution - 1) as f64);
        self.domain.lower()[axis] * (F::one() - t) + self.domain.upper()[axis] * t
    }

    /// Per-axis indices of a flat row index (last axis fastest).
    pub fn indices(&self, mut flat: usize) -> Vec<usize> {
        let d = self.dim();
        let mut idx = vec![0; d];
        for axis in (0..d).rev() {
            idx[axis] = flat % self.resolution;
            flat /= self.resolution;
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Point<F> {
        let coords = self
            .indices(flat)
            .iter()
            .enumerate()
            .map(|(axis, &i)| self.coord(axis, i))
            .collect();
        Point::new(coords)
    }

    /// Value at 2-d lattice indices `(i, j)` = (axis-1 index, axis-2 index).
    pub fn value_2d(&self, i: usize, j: usize) -> F {
        debug_assert_eq!(self.dim(), 2);
        self.values[i * self.resolution + j]
    }

    /// The same lattice with values and bounds converted to f64.
    pub fn to_f64(&self) -> Grid<f64> {
        let conv = |p: &Point<F>| {
            Point::new(p.coords().iter().map(|c| c.to_f64().expect("finite value")).collect())
        };
        Grid {
            domain: Domain {
                lower: conv(self.domain.lower()),
                upper: conv(self.domain.upper()),
            },
            resolution: self.resolution,
            values: self.values.iter().map(|v| v.to_f64().expect("finite value")).collect(),
        }
    }

    /// CSV dump: header `x1,...,xd,f`, one row per lattice point in
    /// row-major order, full-precision scientific notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for axis in 0..self.dim() {
            out.push_str(&format!("x{},", axis + 1));
        }
        out.push_str("f\n");
        for flat in 0..self.len() {
            let p = self.point(flat);
            for &c in p.coords() {
                out.push_str(&crate::textio::csv_float(c));
                out.push(',');
            }
            out.push_str(&crate::textio::csv_float(self.values[flat]));
            out.push('\n');
        }
        out
    }

    /// Parses a two-dimensional grid dump written by [`Grid::to_csv`]
    /// (`#`-prefixed lines are skipped). Rows may come in any order but
    /// must form a full square lattice.
    pub fn from_csv_str(text: &str) -> Result<Grid<F>> {
        let mut rows: Vec<(f64, f64, f64)> = Vec::new();
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Input("empty grid CSV".into()))?;
        if header != "x1,x2,f" {
            return Err(Error::Input(format!(
                "unsupported grid header '{header}' (want x1,x2,f)"
            )));
        }
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Input(format!("bad grid row '{line}'")));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Input(format!("bad number '{s}'")))
            };
            rows.push((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
        }
        if rows.is_empty() {
            return Err(Error::Input("grid CSV has no data rows".into()));
        }

        let mut xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let mut ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.dedup();
        if xs.len() != ys.len() || xs.len() * ys.len() != rows.len() {
            return Err(Error::Input(format!(
                "non-rectangular grid: {} x-levels, {} y-levels, {} rows",
                xs.len(),
                ys.len(),
                rows.len()
            )));
        }
        let res = xs.len();
        if res < 2 {
            return Err(Error::Input("grid needs at least 2 samples per axis".into()));
        }

        let domain = Domain::new(
            Point::new(vec![real(xs[0]), real(ys[0])]),
            Point::new(vec![real(xs[res - 1]), real(ys[res - 1])]),
        )?;
        let level = |sorted: &[f64], v: f64, what: &str| -> Result<usize> {
            sorted
                .iter()
                .position(|&s| s == v)
                .ok_or_else(|| Error::Input(format!("unaligned {what} coordinate {v}")))
        };
        let mut values = vec![None; res * res];
        for (x, y, f) in rows {
            let i = level(&xs, x, "x1")?;
            let j = level(&ys, y, "x2")?;
            if values[i * res + j].replace(real::<F>(f)).is_some() {
                return Err(Error::Input(format!("duplicate grid row at ({x},{y})")));
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<F>>>()
            .ok_or_else(|| Error::Input("grid lattice has holes".into()))?;
        Ok(Grid { domain, resolution: res, values })
    }
}

/// Evaluates `landscape` on the full lattice with `resolution` samples per
/// axis (both endpoints included).
pub fn grid_evaluate<F: Real>(
    landscape: &Landscape<F>,
    domain: &Domain<F>,
    resolution: usize,
) -> Result<Grid<F>> {
    if resolution < 2 {
        return Err(Error::Config(format!("grid resolution {resolution} must be >= 2")));
    }
    if domain.dim() != landscape.dim() {
        return Err(Error::Dimension { expected: landscape.dim(), actual: domain.dim() });
    }
    let total = resolution
        .checked_pow(domain.dim() as u32)
        .filter(|&n| n <= 100_000_000)
        .ok_or_else(|| Error::Config("grid larger than 1e8 points".into()))?;
    let mut grid = Grid { domain: domain.clone(), resolution, values: Vec::with_capacity(total) };
    let mut coords = vec![F::zero(); domain.dim()];
    for flat in 0..total {
        for (axis, &i) in grid.indices(flat).iter().enumerate() {
            coords[axis] = grid.coord(axis, i);
        }
        grid.values.push(landscape.value(&coords));
    }
    Ok(grid)
}
