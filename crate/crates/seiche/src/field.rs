//! Sampled fields on uniform rectangular grids.
//!
//! Fields are immutable values: every operation returns a new field. This
//! keeps grid sweeps trivially parallel and makes property tests cheap.
//! Derivatives use second-order central differences in the interior and
//! second-order one-sided stencils on the edges.

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::parallel;
use num_complex::Complex64;

/// Real scalar samples on a grid.
#[derive(Debug, Clone)]
pub struct ScalarField2D {
    grid: Grid2D,
    values: Vec<f64>,
}

/// Complex samples on a grid (e.g. the analytic wave alpha * exp(i chi)).
#[derive(Debug, Clone)]
pub struct ComplexField2D {
    grid: Grid2D,
    values: Vec<Complex64>,
}

/// A two-component real vector field on a grid.
#[derive(Debug, Clone)]
pub struct VectorField2D {
    grid: Grid2D,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl ScalarField2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::NumericalInput(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NumericalInput(format!(
                "non-finite value at index {k}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: Fn(f64, f64) -> f64 + Sync>(grid: Grid2D, f: F) -> Result<Self> {
        let mut values = vec![0.0; grid.len()];
        let nx = grid.nx;
        let g = &grid;
        parallel::for_each_row(&mut values, nx, |j, row| {
            let y = g.y(j);
            for (i, v) in row.iter_mut().enumerate() {
                *v = f(g.x(i), y);
            }
        });
        Self::new(grid, values)
    }

    pub fn constant(grid: Grid2D, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![c; n])
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map<F: Fn(f64, f64) -> f64>(&self, other: &Self, f: F) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Self::new(self.grid.clone(), values)
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        Self::new(self.grid.clone(), self.values.iter().map(|v| f(*v)).collect())
    }
}

impl ComplexField2D {
    pub fn new(grid: Grid2D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::NumericalInput(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NumericalInput(format!(
                "non-finite complex value at index {k}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: Fn(f64, f64) -> Complex64 + Sync>(grid: Grid2D, f: F) -> Result<Self> {
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        let nx = grid.nx;
        let g = &grid;
        parallel::for_each_row(&mut values, nx, |j, row| {
            let y = g.y(j);
            for (i, v) in row.iter_mut().enumerate() {
                *v = f(g.x(i), y);
            }
        });
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.idx(i, j)]
    }

    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }
}

impl VectorField2D {
    pub fn new(grid: Grid2D, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != grid.len() || v.len() != grid.len() {
            return Err(Error::NumericalInput(
                "component length does not match grid size".into(),
            ));
        }
        if u.iter().chain(v.iter()).any(|w| !w.is_finite()) {
            return Err(Error::NumericalInput("non-finite vector component".into()));
        }
        Ok(Self { grid, u, v })
    }

    pub fn from_fn<F: Fn(f64, f64) -> (f64, f64) + Sync>(grid: Grid2D, f: F) -> Result<Self> {
        let mut u = vec![0.0; grid.len()];
        let mut v = vec![0.0; grid.len()];
        let g = &grid;
        parallel::for_each_row(&mut u, g.nx, |j, row| {
            let y = g.y(j);
            for (i, w) in row.iter_mut().enumerate() {
                *w = f(g.x(i), y).0;
            }
        });
        parallel::for_each_row(&mut v, g.nx, |j, row| {
            let y = g.y(j);
            for (i, w) in row.iter_mut().enumerate() {
                *w = f(g.x(i), y).1;
            }
        });
        Self::new(grid, u, v)
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> (f64, f64) {
        let k = self.grid.idx(i, j);
        (self.u[k], self.v[k])
    }

    pub fn u_field(&self) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid.clone(),
            values: self.u.clone(),
        }
    }

    pub fn v_field(&self) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid.clone(),
            values: self.v.clone(),
        }
    }
}

pub(crate) fn same_grid(a: &Grid2D, b: &Grid2D) -> Result<()> {
    if a != b {
        return Err(Error::NumericalInput("fields live on different grids".into()));
    }
    Ok(())
}

/// First-derivative stencil along a 1-D line of samples.
#[inline]
fn d1(line: impl Fn(usize) -> f64, k: usize, n: usize, h: f64) -> f64 {
    if k == 0 {
        (-3.0 * line(0) + 4.0 * line(1) - line(2)) / (2.0 * h)
    } else if k == n - 1 {
        (3.0 * line(n - 1) - 4.0 * line(n - 2) + line(n - 3)) / (2.0 * h)
    } else {
        (line(k + 1) - line(k - 1)) / (2.0 * h)
    }
}

/// Second-derivative stencil along a 1-D line of samples.
#[inline]
fn d2(line: impl Fn(usize) -> f64, k: usize, n: usize, h: f64) -> f64 {
    let h2 = h * h;
    if k == 0 {
        (2.0 * line(0) - 5.0 * line(1) + 4.0 * line(2) - line(3)) / h2
    } else if k == n - 1 {
        (2.0 * line(n - 1) - 5.0 * line(n - 2) + 4.0 * line(n - 3) - line(n - 4)) / h2
    } else {
        (line(k + 1) - 2.0 * line(k) + line(k - 1)) / h2
    }
}

/// Gradient of a scalar field: central differences in the interior,
/// one-sided second-order stencils on the edges.
pub fn gradient(field: &ScalarField2D) -> Result<VectorField2D> {
    let g = field.grid();
    if g.nx < 3 || g.ny < 3 {
        return Err(Error::NumericalInput(
            "gradient needs at least 3 nodes per axis".into(),
        ));
    }
    let (nx, ny) = (g.nx, g.ny);
    let (hx, hy) = (g.hx(), g.hy());
    let vals = field.values();
    let mut u = vec![0.0; g.len()];
    let mut v = vec![0.0; g.len()];
    parallel::for_each_row(&mut u, nx, |j, row| {
        let base = j * nx;
        for (i, w) in row.iter_mut().enumerate() {
            *w = d1(|k| vals[base + k], i, nx, hx);
        }
    });
    parallel::for_each_row(&mut v, nx, |j, row| {
        for (i, w) in row.iter_mut().enumerate() {
            *w = d1(|k| vals[k * nx + i], j, ny, hy);
        }
    });
    VectorField2D::new(g.clone(), u, v)
}

/// Five-point Laplacian with one-sided second-order edge stencils.
pub fn laplacian(field: &ScalarField2D) -> Result<ScalarField2D> {
    let g = field.grid();
    if g.nx < 4 || g.ny < 4 {
        return Err(Error::NumericalInput(
            "laplacian needs at least 4 nodes per axis".into(),
        ));
    }
    let (nx, ny) = (g.nx, g.ny);
    let (hx, hy) = (g.hx(), g.hy());
    let vals = field.values();
    let mut out = vec![0.0; g.len()];
    parallel::for_each_row(&mut out, nx, |j, row| {
        let base = j * nx;
        for (i, w) in row.iter_mut().enumerate() {
            let dxx = d2(|k| vals[base + k], i, nx, hx);
            let dyy = d2(|k| vals[k * nx + i], j, ny, hy);
            *w = dxx + dyy;
        }
    });
    ScalarField2D::new(g.clone(), out)
}

/// Dot product of two vector fields, pointwise.
pub fn dot(a: &VectorField2D, b: &VectorField2D) -> Result<ScalarField2D> {
    same_grid(a.grid(), b.grid())?;
    let values = a
        .u
        .iter()
        .zip(&a.v)
        .zip(b.u.iter().zip(&b.v))
        .map(|((au, av), (bu, bv))| au * bu + av * bv)
        .collect();
    ScalarField2D::new(a.grid.clone(), values)
}
