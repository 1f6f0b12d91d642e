//! Hodograph-plane analysis of the mixed-type system.
//!
//! In the hodograph plane the linear system for the inverse map (x, y) reads
//!
//! ```text
//! (f - u^2) x_u - 2uv x_v + (f - v^2) y_v = 0        (momentum form)
//! x_v = y_u                                          (potential form)
//! ```
//!
//! with coefficient `f(u, v) >= 0`. Inside the elliptic region
//! `u^2 + v^2 < f` the Jacobian `J = x_u y_v - x_v^2` admits a closed form
//! as a sum of two nonnegative terms over a negative denominator, so `J < 0`
//! unless all first derivatives vanish. This module evaluates both routes to
//! `J`, solves the system on a disc by finite differences, and reports the
//! sign statistics the theorem predicts. On the parabolic boundary
//! (`u^2 + v^2 = f`) the closed form degenerates: with `f = 1` the numerator
//! vanishes on the u-axis for any derivative data, which is why the sign
//! statement stops at the elliptic region.

use crate::error::{Error, Result};
use crate::grid::Grid2D;

/// Coefficient f(u, v) of the system. Nonnegative by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FCoefficient {
    /// f = 1: elliptic inside the unit disc.
    Unity,
    /// f = (u^2 + v^2)^2: elliptic outside the unit circle.
    Quartic,
}

impl FCoefficient {
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        match self {
            FCoefficient::Unity => 1.0,
            FCoefficient::Quartic => {
                let q = u * u + v * v;
                q * q
            }
        }
    }

    /// Partial derivative with respect to u.
    pub fn du(&self, u: f64, v: f64) -> f64 {
        match self {
            FCoefficient::Unity => 0.0,
            FCoefficient::Quartic => 4.0 * u * (u * u + v * v),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FCoefficient::Unity => "unity",
            FCoefficient::Quartic => "quartic",
        }
    }
}

/// True inside the elliptic region u^2 + v^2 < f(u, v).
pub fn elliptic_region_test(u: f64, v: f64, f: &FCoefficient) -> bool {
    u * u + v * v < f.eval(u, v)
}

/// Hodograph-plane point with the first derivatives of the inverse map.
#[derive(Debug, Clone, Copy)]
pub struct HodographPoint {
    pub u: f64,
    pub v: f64,
    pub x_u: f64,
    pub x_v: f64,
    pub y_u: f64,
    pub y_v: f64,
}

impl HodographPoint {
    /// Build a point whose y-derivatives satisfy both equations of the
    /// system given (x_u, x_v); errors on the parabolic set f = v^2.
    pub fn consistent(u: f64, v: f64, x_u: f64, x_v: f64, f: &FCoefficient) -> Result<Self> {
        let fv = f.eval(u, v) - v * v;
        if fv == 0.0 {
            return Err(Error::ParabolicDegeneracy { u, v });
        }
        let y_v = (2.0 * u * v * x_v - (f.eval(u, v) - u * u) * x_u) / fv;
        Ok(Self { u, v, x_u, x_v, y_u: x_v, y_v })
    }
}

/// Both routes to the hodograph Jacobian at a point.
#[derive(Debug, Clone, Copy)]
pub struct JacobianPair {
    /// x_u y_v - x_v y_u from the supplied derivatives.
    pub direct: f64,
    /// Closed form with y_v eliminated through the momentum equation.
    pub closed_form: f64,
}

impl JacobianPair {
    pub fn value(&self) -> f64 {
        self.direct
    }

    /// Relative disagreement of the two routes.
    pub fn rel_disagreement(&self) -> f64 {
        let scale = self.direct.abs().max(self.closed_form.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.direct - self.closed_form).abs() / scale
        }
    }
}

/// Numerator of the closed-form Jacobian:
/// `[(f-u^2) x_u - uv x_v]^2 + f (f - u^2 - v^2) x_v^2`.
pub fn closed_form_numerator(p: &HodographPoint, f: &FCoefficient) -> f64 {
    let fv = f.eval(p.u, p.v);
    let a = (fv - p.u * p.u) * p.x_u - p.u * p.v * p.x_v;
    a * a + fv * (fv - p.u * p.u - p.v * p.v) * p.x_v * p.x_v
}

/// Evaluate the Jacobian by both routes.
///
/// Requires the potential-form contract `y_u = x_v`; the direct route uses
/// the supplied `y_v`, the closed form eliminates it, and the two agree to
/// rounding whenever the supplied derivatives satisfy the momentum equation.
pub fn jacobian_eq_pair(p: &HodographPoint, f: &FCoefficient) -> Result<JacobianPair> {
    let scale = p.x_v.abs().max(p.y_u.abs()).max(1.0);
    if (p.y_u - p.x_v).abs() > 1e-12 * scale {
        return Err(Error::NumericalInput(format!(
            "potential contract violated: y_u - x_v = {:e}",
            p.y_u - p.x_v
        )));
    }
    let fv = f.eval(p.u, p.v);
    let denom = -(fv - p.u * p.u) * (fv - p.v * p.v);
    if denom == 0.0 {
        return Err(Error::ParabolicDegeneracy { u: p.u, v: p.v });
    }
    let direct = p.x_u * p.y_v - p.x_v * p.y_u;
    let closed_form = closed_form_numerator(p, f) / denom;
    Ok(JacobianPair { direct, closed_form })
}

/// Disc in the (u, v) plane.
#[derive(Debug, Clone, Copy)]
pub struct Disc {
    pub cu: f64,
    pub cv: f64,
    pub radius: f64,
}

impl Disc {
    pub fn contains(&self, u: f64, v: f64) -> bool {
        let du = u - self.cu;
        let dv = v - self.cv;
        du * du + dv * dv < self.radius * self.radius
    }
}

/// Options for the finite-difference theorem check.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub max_iterations: usize,
    /// Solve tolerance on the SOR update, in units of the unknown.
    pub tolerance: f64,
    /// Over-relaxation factor; `None` picks the model-problem optimum.
    pub omega: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200_000,
            tolerance: 1e-12,
            omega: None,
        }
    }
}

/// Outcome of the numerical theorem check.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    /// Nodes strictly inside the disc (the unknowns).
    pub interior_nodes: usize,
    /// Count with J < 0 strictly.
    pub negative: usize,
    /// Count with |J| <= 1e-12 (near-degenerate).
    pub near_zero: usize,
    /// Count with J >= -1e-12.
    pub nonnegative: usize,
    pub min_j: f64,
    pub max_j: f64,
    /// Worst relative disagreement between the two Jacobian routes.
    pub max_rel_disagreement: f64,
    pub iterations: usize,
    pub final_update: f64,
    /// Near-zero count times cell area: the measure of the zero set.
    pub near_zero_measure: f64,
    /// The solved x samples with J at interior nodes, for CSV export:
    /// rows (u, v, j).
    pub jacobian_rows: Vec<[f64; 3]>,
}

/// Solve the hodograph system for x on a disc and check the sign of J.
///
/// The potential equation is folded into a single second-order PDE for x
/// (`y` never needs to be formed: `y_u = x_v` and `y_v` follows from the
/// momentum equation). Dirichlet data for x is taken from `boundary_x` at
/// every grid node outside the disc. The sweep is plain SOR over interior
/// nodes in storage order.
pub fn verify_theorem_numerically<F>(
    f: &FCoefficient,
    grid: &Grid2D,
    disc: Disc,
    boundary_x: F,
    opts: SolveOptions,
) -> Result<TheoremReport>
where
    F: Fn(f64, f64) -> f64,
{
    let (nx, ny) = (grid.nx, grid.ny);
    if nx < 5 || ny < 5 {
        return Err(Error::NumericalInput("theorem grid needs at least 5 nodes per axis".into()));
    }
    let (hu, hv) = (grid.hx(), grid.hy());

    // node classification and initial data
    let mut inside = vec![false; grid.len()];
    let mut x = vec![0.0; grid.len()];
    for (i, j, u, v) in grid.nodes() {
        let k = grid.idx(i, j);
        x[k] = boundary_x(u, v);
        if disc.contains(u, v) {
            if !elliptic_region_test(u, v, f) {
                return Err(Error::DomainTouchesParabolic { u, v });
            }
            inside[k] = true;
        }
    }
    // interior unknowns need a full 3x3 neighborhood on the index grid
    let mut unknowns = Vec::new();
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            if inside[grid.idx(i, j)] {
                unknowns.push((i, j));
            }
        }
    }
    for j in [0, ny - 1] {
        for i in 0..nx {
            if inside[grid.idx(i, j)] {
                return Err(Error::NumericalInput("disc touches the grid frame".into()));
            }
        }
    }
    for i in [0, nx - 1] {
        for j in 0..ny {
            if inside[grid.idx(i, j)] {
                return Err(Error::NumericalInput("disc touches the grid frame".into()));
            }
        }
    }
    if unknowns.is_empty() {
        return Err(Error::NumericalInput("disc contains no grid nodes".into()));
    }

    // stencil coefficients per unknown
    struct Stencil {
        k: usize,
        e: f64,
        w: f64,
        n: f64,
        s: f64,
        ne: f64,
        nw: f64,
        se: f64,
        sw: f64,
        center: f64,
    }
    let mut stencils = Vec::with_capacity(unknowns.len());
    for &(i, j) in &unknowns {
        let (u, v) = (grid.x(i), grid.y(j));
        let fv = f.eval(u, v);
        let fu_ = f.du(u, v);
        let a = (fv - u * u) * (fv - v * v);
        let b = -2.0 * u * v * (fv - v * v);
        let c = (fv - v * v) * (fv - v * v);
        let d1 = (fv - v * v) * (fu_ - 2.0 * u) - fu_ * (fv - u * u);
        let d2 = 2.0 * u * v * fu_ - 2.0 * v * (fv - v * v);
        let cross = b / (4.0 * hu * hv);
        stencils.push(Stencil {
            k: grid.idx(i, j),
            e: a / (hu * hu) + d1 / (2.0 * hu),
            w: a / (hu * hu) - d1 / (2.0 * hu),
            n: c / (hv * hv) + d2 / (2.0 * hv),
            s: c / (hv * hv) - d2 / (2.0 * hv),
            ne: cross,
            sw: cross,
            nw: -cross,
            se: -cross,
            center: -2.0 * a / (hu * hu) - 2.0 * c / (hv * hv),
        });
    }

    let omega = opts.omega.unwrap_or_else(|| {
        let n_eff = (2.0 * disc.radius / hu.max(hv)).max(4.0);
        2.0 / (1.0 + (std::f64::consts::PI / n_eff).sin())
    });

    let mut iterations = 0;
    let mut max_update = f64::INFINITY;
    while iterations < opts.max_iterations {
        iterations += 1;
        max_update = 0.0;
        for st in &stencils {
            let k = st.k;
            let residual = st.center * x[k]
                + st.e * x[k + 1]
                + st.w * x[k - 1]
                + st.n * x[k + nx]
                + st.s * x[k - nx]
                + st.ne * x[k + nx + 1]
                + st.nw * x[k + nx - 1]
                + st.se * x[k - nx + 1]
                + st.sw * x[k - nx - 1];
            let update = -omega * residual / st.center;
            x[k] += update;
            max_update = max_update.max(update.abs());
        }
        if max_update <= opts.tolerance {
            break;
        }
    }
    if max_update > opts.tolerance {
        return Err(Error::LinearSolveFailure {
            residual: max_update,
            iterations,
        });
    }

    // Jacobian statistics at interior nodes
    let mut report = TheoremReport {
        interior_nodes: unknowns.len(),
        negative: 0,
        near_zero: 0,
        nonnegative: 0,
        min_j: f64::INFINITY,
        max_j: f64::NEG_INFINITY,
        max_rel_disagreement: 0.0,
        iterations,
        final_update: max_update,
        near_zero_measure: 0.0,
        jacobian_rows: Vec::with_capacity(unknowns.len()),
    };
    for &(i, j) in &unknowns {
        let k = grid.idx(i, j);
        let (u, v) = (grid.x(i), grid.y(j));
        let x_u = (x[k + 1] - x[k - 1]) / (2.0 * hu);
        let x_v = (x[k + nx] - x[k - nx]) / (2.0 * hv);
        let p = HodographPoint::consistent(u, v, x_u, x_v, f)?;
        let pair = jacobian_eq_pair(&p, f)?;
        let jv = pair.value();
        report.max_rel_disagreement = report.max_rel_disagreement.max(pair.rel_disagreement());
        report.min_j = report.min_j.min(jv);
        report.max_j = report.max_j.max(jv);
        if jv < 0.0 {
            report.negative += 1;
        }
        if jv.abs() <= 1e-12 {
            report.near_zero += 1;
        }
        if jv >= -1e-12 {
            report.nonnegative += 1;
        }
        report.jacobian_rows.push([u, v, jv]);
    }
    report.near_zero_measure = report.near_zero as f64 * hu * hv;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Lcg64;

    #[test]
    fn elliptic_region_examples() {
        assert!(!elliptic_region_test(0.5, 0.0, &FCoefficient::Quartic));
        assert!(elliptic_region_test(2.0, 0.0, &FCoefficient::Quartic));
        assert!(elliptic_region_test(0.0, 0.0, &FCoefficient::Unity));
    }

    #[test]
    fn jacobian_vanishes_with_all_derivatives() {
        let p = HodographPoint::consistent(0.3, 0.2, 0.0, 0.0, &FCoefficient::Unity).unwrap();
        assert_eq!(p.y_v, 0.0);
        let pair = jacobian_eq_pair(&p, &FCoefficient::Unity).unwrap();
        assert_eq!(pair.direct, 0.0);
        assert_eq!(pair.closed_form, 0.0);
    }

    #[test]
    fn jacobian_hand_value_in_elliptic_interior() {
        // f = 1, u = 0.5, v = 0, x_u = 1, x_v = 0:
        // closed form = -[(1 - 0.25)]^2 / [(1 - 0.25)(1 - 0)] = -0.75
        let p = HodographPoint::consistent(0.5, 0.0, 1.0, 0.0, &FCoefficient::Unity).unwrap();
        let pair = jacobian_eq_pair(&p, &FCoefficient::Unity).unwrap();
        assert!((pair.closed_form + 0.75).abs() < 1e-15);
        assert!((pair.direct + 0.75).abs() < 1e-15);
        assert!(pair.rel_disagreement() <= 1e-12);
    }

    #[test]
    fn numerator_vanishes_on_u_axis_of_unit_circle() {
        // f = 1, u = 1, v = 0: numerator zero for any x_u, x_v, and the
        // denominator is exactly zero (parabolic point).
        let mut rng = Lcg64::new(7);
        for _ in 0..20 {
            let p = HodographPoint {
                u: 1.0,
                v: 0.0,
                x_u: rng.uniform(-5.0, 5.0),
                x_v: rng.uniform(-5.0, 5.0),
                y_u: 0.0,
                y_v: 0.0,
            };
            let p = HodographPoint { y_u: p.x_v, ..p };
            assert_eq!(closed_form_numerator(&p, &FCoefficient::Unity), 0.0);
            assert!(matches!(
                jacobian_eq_pair(&p, &FCoefficient::Unity),
                Err(Error::ParabolicDegeneracy { .. })
            ));
        }
    }

    #[test]
    fn routes_agree_and_sign_is_negative_for_random_consistent_points() {
        let mut rng = Lcg64::new(99);
        let f = FCoefficient::Unity;
        for _ in 0..500 {
            // keep a margin to the parabolic boundary
            let r = rng.uniform(0.0, 0.85);
            let th = rng.uniform(0.0, std::f64::consts::TAU);
            let (u, v) = (r * th.cos(), r * th.sin());
            let x_u = rng.uniform(-3.0, 3.0);
            let x_v = rng.uniform(-3.0, 3.0);
            let p = HodographPoint::consistent(u, v, x_u, x_v, &f).unwrap();
            let pair = jacobian_eq_pair(&p, &f).unwrap();
            assert!(pair.rel_disagreement() <= 1e-12, "{:?}", pair);
            assert!(pair.value() <= 0.0);
            if x_u != 0.0 || x_v != 0.0 {
                assert!(pair.value() < 0.0);
            }
        }
    }

    #[test]
    fn contract_violation_is_rejected() {
        let p = HodographPoint {
            u: 0.1,
            v: 0.1,
            x_u: 1.0,
            x_v: 0.5,
            y_u: 0.0,
            y_v: 0.0,
        };
        assert!(jacobian_eq_pair(&p, &FCoefficient::Unity).is_err());
    }

    #[test]
    fn constant_boundary_data_gives_identically_zero_jacobian() {
        let grid = Grid2D::square(-0.9, 0.9, 41).unwrap();
        let disc = Disc { cu: 0.0, cv: 0.0, radius: 0.8 };
        let report = verify_theorem_numerically(
            &FCoefficient::Unity,
            &grid,
            disc,
            |_, _| 2.5,
            SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(report.near_zero, report.interior_nodes);
        assert!(report.max_j.abs() < 1e-12);
    }

    #[test]
    fn nonconstant_data_drives_jacobian_negative() {
        let grid = Grid2D::square(-0.9, 0.9, 81).unwrap();
        let disc = Disc { cu: 0.0, cv: 0.0, radius: 0.8 };
        let report = verify_theorem_numerically(
            &FCoefficient::Unity,
            &grid,
            disc,
            |u, _| u,
            SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(report.negative, report.interior_nodes, "min {} max {}", report.min_j, report.max_j);
        assert!(report.max_j < 0.0);
        assert!(report.max_rel_disagreement <= 1e-12);
    }

    #[test]
    fn quartic_coefficient_disc_outside_unit_circle() {
        let grid = Grid2D::new(1.6, 2.4, -0.4, 0.4, 65, 65).unwrap();
        let disc = Disc { cu: 2.0, cv: 0.0, radius: 0.3 };
        let report = verify_theorem_numerically(
            &FCoefficient::Quartic,
            &grid,
            disc,
            |u, _| u,
            SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(report.negative, report.interior_nodes);
        assert!(report.max_rel_disagreement <= 1e-12);
    }

    #[test]
    fn domain_touching_parabolic_boundary_errors() {
        let grid = Grid2D::square(-1.1, 1.1, 41).unwrap();
        let disc = Disc { cu: 0.0, cv: 0.0, radius: 1.05 };
        assert!(matches!(
            verify_theorem_numerically(
                &FCoefficient::Unity,
                &grid,
                disc,
                |u, _| u,
                SolveOptions::default()
            ),
            Err(Error::DomainTouchesParabolic { .. }) | Err(Error::NumericalInput(_))
        ));
    }

    #[test]
    fn zero_set_measure_does_not_grow_under_refinement() {
        let disc = Disc { cu: 0.0, cv: 0.0, radius: 0.8 };
        let mut measures = Vec::new();
        for n in [41usize, 81, 161] {
            let grid = Grid2D::square(-0.9, 0.9, n).unwrap();
            let report = verify_theorem_numerically(
                &FCoefficient::Unity,
                &grid,
                disc,
                |u, _| u,
                SolveOptions::default(),
            )
            .unwrap();
            measures.push(report.near_zero_measure);
        }
        assert!(measures[1] <= measures[0] + 1e-12, "{measures:?}");
        assert!(measures[2] <= measures[1] + 1e-12, "{measures:?}");
    }
}
