//! Steady shallow-water flow: residuals of the continuity/irrotationality
//! system, the Bernoulli depth law, per-node type classification, and the
//! energy functional.
//!
//! With flow speed squared `Q = u^2 + v^2` and Bernoulli constant `C`
//! (velocity-squared units), the depth law reads `h = (C - Q) / 2g` and the
//! signal speed satisfies `c^2 = gh = (C - Q)/2`. The quasilinear system is
//! elliptic where `Q < c^2`, hyperbolic where `Q > c^2`, and degenerates to
//! parabolic type on the sonic set `Q = c^2`.

use crate::error::{Error, Result};
use crate::field::{gradient, ScalarField2D, VectorField2D};
use crate::grid::{Grid2D, GridWindow};

/// Relative tolerance for tagging a node as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-12;

/// Bernoulli constant and gravity for a steady flow.
#[derive(Debug, Clone, Copy)]
pub struct SteadyFlowConfig {
    /// Bernoulli constant, velocity-squared units; h(0) = C / 2g is the
    /// stagnation depth.
    pub bernoulli: f64,
    pub g: f64,
}

impl SteadyFlowConfig {
    pub fn new(bernoulli: f64, g: f64) -> Result<Self> {
        if !(bernoulli.is_finite() && g.is_finite()) || bernoulli <= 0.0 || g <= 0.0 {
            return Err(Error::NumericalInput(format!(
                "steady-flow config needs C > 0 and g > 0, got C = {bernoulli}, g = {g}"
            )));
        }
        Ok(Self { bernoulli, g })
    }
}

/// Depth from the Bernoulli law, h = (C - Q) / 2g.
pub fn depth_from_speed(q: f64, cfg: &SteadyFlowConfig) -> Result<f64> {
    if !q.is_finite() || q < 0.0 {
        return Err(Error::NumericalInput(format!("flow speed squared Q = {q} must be >= 0")));
    }
    if q > cfg.bernoulli {
        return Err(Error::Cavitation { q, c: cfg.bernoulli });
    }
    Ok((cfg.bernoulli - q) / (2.0 * cfg.g))
}

/// Signal speed squared c^2 = gh = (C - Q)/2.
pub fn signal_speed_squared(q: f64, cfg: &SteadyFlowConfig) -> Result<f64> {
    depth_from_speed(q, cfg).map(|h| cfg.g * h)
}

fn check_cavitation(vf: &VectorField2D, cfg: &SteadyFlowConfig) -> Result<()> {
    for (k, (u, v)) in vf.u().iter().zip(vf.v()).enumerate() {
        let q = u * u + v * v;
        if q > cfg.bernoulli {
            let _ = k;
            return Err(Error::Cavitation { q, c: cfg.bernoulli });
        }
    }
    Ok(())
}

/// Pointwise residuals of the steady system: the quasilinear continuity
/// equation `(c^2-u^2) u_x - 2uv u_y + (c^2-v^2) v_y` and the curl
/// `v_x - u_y` (both vanish on a solution).
pub fn residuals(
    vf: &VectorField2D,
    cfg: &SteadyFlowConfig,
) -> Result<(ScalarField2D, ScalarField2D)> {
    check_cavitation(vf, cfg)?;
    let grad_u = gradient(&vf.u_field())?;
    let grad_v = gradient(&vf.v_field())?;
    let grid = vf.grid();
    let mut continuity = Vec::with_capacity(grid.len());
    let mut curl = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let (u, v) = (vf.u()[k], vf.v()[k]);
        let q = u * u + v * v;
        let c2 = (cfg.bernoulli - q) / 2.0;
        let (ux, uy) = (grad_u.u()[k], grad_u.v()[k]);
        let (vx, vy) = (grad_v.u()[k], grad_v.v()[k]);
        continuity.push((c2 - u * u) * ux - 2.0 * u * v * uy + (c2 - v * v) * vy);
        curl.push(vx - uy);
    }
    Ok((
        ScalarField2D::new(grid.clone(), continuity)?,
        ScalarField2D::new(grid.clone(), curl)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowType {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl FlowType {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowType::Elliptic => "elliptic",
            FlowType::Hyperbolic => "hyperbolic",
            FlowType::Parabolic => "parabolic",
        }
    }

    /// Numeric tag for CSV output: -1 elliptic, 0 parabolic, +1 hyperbolic.
    pub fn tag(&self) -> i32 {
        match self {
            FlowType::Elliptic => -1,
            FlowType::Parabolic => 0,
            FlowType::Hyperbolic => 1,
        }
    }
}

/// Per-node equation type of the steady system.
#[derive(Debug, Clone)]
pub struct FlowTypeMap {
    grid: Grid2D,
    tags: Vec<FlowType>,
}

impl FlowTypeMap {
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn tags(&self) -> &[FlowType] {
        &self.tags
    }

    pub fn get(&self, i: usize, j: usize) -> FlowType {
        self.tags[self.grid.idx(i, j)]
    }
}

/// Classify each node by the sign of c^2 - Q; ties within
/// `PARABOLIC_TOL * C` are parabolic.
pub fn classify_type(vf: &VectorField2D, cfg: &SteadyFlowConfig) -> Result<FlowTypeMap> {
    check_cavitation(vf, cfg)?;
    let tol = PARABOLIC_TOL * cfg.bernoulli;
    let tags = vf
        .u()
        .iter()
        .zip(vf.v())
        .map(|(u, v)| {
            let q = u * u + v * v;
            let c2 = (cfg.bernoulli - q) / 2.0;
            let d = c2 - q;
            if d.abs() <= tol {
                FlowType::Parabolic
            } else if d > 0.0 {
                FlowType::Elliptic
            } else {
                FlowType::Hyperbolic
            }
        })
        .collect();
    Ok(FlowTypeMap {
        grid: vf.grid().clone(),
        tags,
    })
}

/// Energy functional over a grid window. The inner integral of the density
/// `(C - s)/2` from 0 to Q is exact: `C Q / 2 - Q^2 / 4`; the outer integral
/// uses the trapezoid rule.
pub fn energy_functional(
    vf: &VectorField2D,
    cfg: &SteadyFlowConfig,
    window: GridWindow,
) -> Result<f64> {
    check_cavitation(vf, cfg)?;
    let grid = vf.grid();
    if window.i_max >= grid.nx || window.j_max >= grid.ny {
        return Err(Error::NumericalInput("window exceeds the grid".into()));
    }
    let (hx, hy) = (grid.hx(), grid.hy());
    let mut total = 0.0;
    for j in window.j_min..=window.j_max {
        let wy = if j == window.j_min || j == window.j_max { 0.5 } else { 1.0 };
        for i in window.i_min..=window.i_max {
            let wx = if i == window.i_min || i == window.i_max { 0.5 } else { 1.0 };
            let (u, v) = vf.get(i, j);
            let q = u * u + v * v;
            let inner = cfg.bernoulli * q / 2.0 - q * q / 4.0;
            total += wx * wy * inner;
        }
    }
    Ok(total * hx * hy)
}
