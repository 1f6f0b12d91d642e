//! CSV serialization of fields and tables.
//!
//! All floating-point output uses 17 significant digits so files round-trip
//! bit-exactly. Field files are row-major in storage order.

use crate::error::{Error, Result};
use crate::field::{ComplexField2D, ScalarField2D, VectorField2D};
use crate::grid::Grid2D;
use num_complex::Complex64;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Format a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

/// Render a CSV table from a header and row iterator.
pub fn render_csv<I, R>(header: &str, rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = f64>,
{
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{v:.16e}");
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_scalar_csv(field: &ScalarField2D, path: &Path) -> Result<()> {
    let g = field.grid();
    let rows = g
        .nodes()
        .map(|(i, j, x, y)| [x, y, field.get(i, j)]);
    write_file(path, &render_csv("x,y,value", rows))
}

pub fn write_complex_csv(field: &ComplexField2D, path: &Path) -> Result<()> {
    let g = field.grid();
    let rows = g.nodes().map(|(i, j, x, y)| {
        let z = field.get(i, j);
        [x, y, z.re, z.im]
    });
    write_file(path, &render_csv("x,y,re,im", rows))
}

pub fn write_vector_csv(field: &VectorField2D, path: &Path) -> Result<()> {
    let g = field.grid();
    let rows = g.nodes().map(|(i, j, x, y)| {
        let (u, v) = field.get(i, j);
        [x, y, u, v]
    });
    write_file(path, &render_csv("x,y,u,v", rows))
}

/// Write an arbitrary numeric table.
pub fn write_table_csv<I, R>(header: &str, rows: I, path: &Path) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = f64>,
{
    write_file(path, &render_csv(header, rows))
}

fn parse_table(path: &Path, expected_header: &str) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Config(format!("{}: empty file", path.display())))?;
    if header.trim() != expected_header {
        return Err(Error::Config(format!(
            "{}: expected header `{expected_header}`, found `{header}`",
            path.display()
        )));
    }
    let ncols = expected_header.split(',').count();
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(ncols);
        for part in line.split(',') {
            let v: f64 = part.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "{}: line {}: bad number `{part}`",
                    path.display(),
                    lineno + 2
                ))
            })?;
            row.push(v);
        }
        if row.len() != ncols {
            return Err(Error::Config(format!(
                "{}: line {}: expected {ncols} columns, found {}",
                path.display(),
                lineno + 2,
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn sorted_unique(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

/// Rebuild the grid implied by the x,y columns of a field table.
fn grid_from_columns(rows: &[Vec<f64>]) -> Result<Grid2D> {
    let xs = sorted_unique(rows.iter().map(|r| r[0]));
    let ys = sorted_unique(rows.iter().map(|r| r[1]));
    let (nx, ny) = (xs.len(), ys.len());
    if nx < 2 || ny < 2 || rows.len() != nx * ny {
        return Err(Error::Config(format!(
            "field table is not a full {nx} x {ny} grid ({} rows)",
            rows.len()
        )));
    }
    let grid = Grid2D::new(xs[0], xs[nx - 1], ys[0], ys[ny - 1], nx, ny)?;
    // uniform-spacing check
    for (k, &x) in xs.iter().enumerate() {
        if (x - grid.x(k)).abs() > 1e-9 * grid.hx().abs().max(1.0) {
            return Err(Error::Config("x coordinates are not uniformly spaced".into()));
        }
    }
    for (k, &y) in ys.iter().enumerate() {
        if (y - grid.y(k)).abs() > 1e-9 * grid.hy().abs().max(1.0) {
            return Err(Error::Config("y coordinates are not uniformly spaced".into()));
        }
    }
    Ok(grid)
}

fn node_index(grid: &Grid2D, x: f64, y: f64) -> Result<usize> {
    let fi = (x - grid.x_min) / grid.hx();
    let fj = (y - grid.y_min) / grid.hy();
    let i = fi.round() as isize;
    let j = fj.round() as isize;
    if i < 0
        || j < 0
        || i as usize >= grid.nx
        || j as usize >= grid.ny
        || (fi - i as f64).abs() > 1e-6
        || (fj - j as f64).abs() > 1e-6
    {
        return Err(Error::Config(format!("coordinate ({x}, {y}) is off-grid")));
    }
    Ok(grid.idx(i as usize, j as usize))
}

pub fn read_vector_csv(path: &Path) -> Result<VectorField2D> {
    let rows = parse_table(path, "x,y,u,v")?;
    let grid = grid_from_columns(&rows)?;
    let mut u = vec![f64::NAN; grid.len()];
    let mut v = vec![f64::NAN; grid.len()];
    for r in &rows {
        let k = node_index(&grid, r[0], r[1])?;
        u[k] = r[2];
        v[k] = r[3];
    }
    VectorField2D::new(grid, u, v)
}

pub fn read_complex_csv(path: &Path) -> Result<ComplexField2D> {
    let rows = parse_table(path, "x,y,re,im")?;
    let grid = grid_from_columns(&rows)?;
    let mut vals = vec![Complex64::new(f64::NAN, 0.0); grid.len()];
    for r in &rows {
        let k = node_index(&grid, r[0], r[1])?;
        vals[k] = Complex64::new(r[2], r[3]);
    }
    ComplexField2D::new(grid, vals)
}

pub fn read_scalar_csv(path: &Path) -> Result<ScalarField2D> {
    let rows = parse_table(path, "x,y,value")?;
    let grid = grid_from_columns(&rows)?;
    let mut vals = vec![f64::NAN; grid.len()];
    for r in &rows {
        let k = node_index(&grid, r[0], r[1])?;
        vals[k] = r[2];
    }
    ScalarField2D::new(grid, vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_csv_round_trips() {
        let g = Grid2D::new(0.0, 1.0, -0.5, 0.5, 5, 7).unwrap();
        let f = VectorField2D::from_fn(g, |x, y| (x * y + 0.1, (x - y).sin())).unwrap();
        let dir = std::env::temp_dir().join("seiche_io_test");
        let path = dir.join("vec.csv");
        write_vector_csv(&f, &path).unwrap();
        let back = read_vector_csv(&path).unwrap();
        assert_eq!(back.grid(), f.grid());
        for k in 0..f.grid().len() {
            assert_eq!(back.u()[k], f.u()[k]);
            assert_eq!(back.v()[k], f.v()[k]);
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn rejects_wrong_header() {
        let dir = std::env::temp_dir().join("seiche_io_hdr");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "a,b,c\n1,2,3\n").unwrap();
        assert!(read_scalar_csv(&path).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn seventeen_digit_format_round_trips() {
        for v in [std::f64::consts::PI, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-8] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v, "{s}");
        }
    }
}
