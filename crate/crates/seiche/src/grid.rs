//! Uniform rectangular grids.

use crate::error::{Error, Result};

/// A uniform rectangular grid on `[x_min, x_max] x [y_min, y_max]` with
/// `nx * ny` nodes. Storage order is row-major: node `(i, j)` lives at
/// index `j * nx + i`, with `i` the x index.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid2D {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && y_min.is_finite() && y_max.is_finite()) {
            return Err(Error::NumericalInput("grid bounds must be finite".into()));
        }
        if x_min >= x_max || y_min >= y_max {
            return Err(Error::NumericalInput(format!(
                "grid bounds must satisfy x_min < x_max and y_min < y_max, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::NumericalInput(format!(
                "grid needs at least 2 nodes per axis, got {nx} x {ny}"
            )));
        }
        Ok(Self { x_min, x_max, y_min, y_max, nx, ny })
    }

    /// Square grid shorthand.
    pub fn square(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(min, max, min, max, n, n)
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.hx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.hy()
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Iterate nodes in storage order as `(i, j, x, y)`.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.x(i), self.y(j))))
    }

    /// Index window covering the coordinate rectangle, snapped outward to nodes.
    pub fn window(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<GridWindow> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::NumericalInput("window must have positive extent".into()));
        }
        let clamp = |v: f64, lo: f64, hi: f64| v.max(lo).min(hi);
        let i_min = ((clamp(x0, self.x_min, self.x_max) - self.x_min) / self.hx()).floor() as usize;
        let i_max = ((clamp(x1, self.x_min, self.x_max) - self.x_min) / self.hx()).ceil() as usize;
        let j_min = ((clamp(y0, self.y_min, self.y_max) - self.y_min) / self.hy()).floor() as usize;
        let j_max = ((clamp(y1, self.y_min, self.y_max) - self.y_min) / self.hy()).ceil() as usize;
        GridWindow::new(i_min, i_max.min(self.nx - 1), j_min, j_max.min(self.ny - 1))
    }

    /// Full-grid window.
    pub fn full_window(&self) -> GridWindow {
        GridWindow {
            i_min: 0,
            i_max: self.nx - 1,
            j_min: 0,
            j_max: self.ny - 1,
        }
    }
}

/// Inclusive index subrectangle of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridWindow {
    pub i_min: usize,
    pub i_max: usize,
    pub j_min: usize,
    pub j_max: usize,
}

impl GridWindow {
    pub fn new(i_min: usize, i_max: usize, j_min: usize, j_max: usize) -> Result<Self> {
        if i_min > i_max || j_min > j_max {
            return Err(Error::NumericalInput("empty grid window".into()));
        }
        Ok(Self { i_min, i_max, j_min, j_max })
    }
}
