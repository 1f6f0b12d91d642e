//! Uniform field evaluation across a fold caustic.
//!
//! The ansatz replaces the diverging two-ray geometrical-optics sum with
//!
//! ```text
//! u = { g0 V[k^(2/3) rho] + (g1 / i k^(1/3)) V'[k^(2/3) rho] } exp(i k theta)
//! ```
//!
//! where `V` solves the Airy equation. The sign of `rho` splits the grid into
//! an illuminated zone (oscillatory), a shadow zone (exponentially damped),
//! and the caustic layer `rho ~ 0` of width ~ k^(-2/3) where the field stays
//! bounded. Away from the caustic the ansatz carries two geometrical-optics
//! waves with phases `psi_pm = theta +/- (2/3) rho^(3/2)` and amplitudes
//! `z_pm = (g0 +/- sqrt(rho) g1) / rho^(1/4)`.
//!
//! Note the phase exponent: only `rho^(3/2)` makes
//! `grad psi_pm = grad theta +/- sqrt(rho) grad rho`, which is what the
//! multiply-by-`sqrt(rho)`-and-add reduction of the layer equations needs.
//! The four layer equations are implemented as residual evaluators over
//! given fields, not as a solver.

use crate::airy::AirySolution;
use crate::error::{Error, Result};
use crate::field::{dot, gradient, laplacian, same_grid, ComplexField2D, ScalarField2D};
use num_complex::Complex64;

/// Relative half-width of the caustic zone in units of max |rho|.
pub const CAUSTIC_ZONE_REL_TOL: f64 = 1e-10;

/// Zone tag of a grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Illuminated,
    Shadow,
    Caustic,
}

impl Zone {
    pub fn as_str(&self) -> &'static str {
        match self {
            Zone::Illuminated => "illuminated",
            Zone::Shadow => "shadow",
            Zone::Caustic => "caustic",
        }
    }

    /// Numeric tag for CSV: +1 illuminated, -1 shadow, 0 caustic.
    pub fn tag(&self) -> i32 {
        match self {
            Zone::Illuminated => 1,
            Zone::Shadow => -1,
            Zone::Caustic => 0,
        }
    }
}

/// The four ansatz fields on a common grid, plus the wave number.
#[derive(Debug, Clone)]
pub struct UniformAnsatz {
    pub theta: ScalarField2D,
    pub rho: ScalarField2D,
    pub g0: ScalarField2D,
    pub g1: ScalarField2D,
    pub wave_number: f64,
}

impl UniformAnsatz {
    pub fn new(
        theta: ScalarField2D,
        rho: ScalarField2D,
        g0: ScalarField2D,
        g1: ScalarField2D,
        wave_number: f64,
    ) -> Result<Self> {
        same_grid(theta.grid(), rho.grid())?;
        same_grid(theta.grid(), g0.grid())?;
        same_grid(theta.grid(), g1.grid())?;
        if !(wave_number.is_finite() && wave_number > 0.0) {
            return Err(Error::NumericalInput(format!(
                "wave number k = {wave_number} must be positive"
            )));
        }
        Ok(Self { theta, rho, g0, g1, wave_number })
    }

    /// The canonical fold: theta = 0, rho = (9/4)^(1/3) sign(y) |y|^(2/3),
    /// g0 = 1, g1 = 0. The caustic is the x-axis; y > 0 is illuminated.
    pub fn canonical_fold(grid: crate::grid::Grid2D, wave_number: f64) -> Result<Self> {
        let c = (2.25f64).powf(1.0 / 3.0);
        let theta = ScalarField2D::constant(grid.clone(), 0.0)?;
        let rho = ScalarField2D::from_fn(grid.clone(), |_, y| {
            c * y.signum() * y.abs().powf(2.0 / 3.0)
        })?;
        let g0 = ScalarField2D::constant(grid.clone(), 1.0)?;
        let g1 = ScalarField2D::constant(grid, 0.0)?;
        Self::new(theta, rho, g0, g1, wave_number)
    }

    /// Absolute half-width of the caustic zone for this ansatz.
    pub fn caustic_zone_width(&self) -> f64 {
        CAUSTIC_ZONE_REL_TOL * self.rho.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Zone of each node by the sign of rho.
    pub fn zones(&self) -> Vec<Zone> {
        let tol = self.caustic_zone_width();
        self.rho
            .values()
            .iter()
            .map(|&r| {
                if r.abs() <= tol {
                    Zone::Caustic
                } else if r > 0.0 {
                    Zone::Illuminated
                } else {
                    Zone::Shadow
                }
            })
            .collect()
    }
}

/// Residuals of the two highest-order layer equations:
/// `(grad theta)^2 + rho (grad rho)^2 - 1` and `2 grad theta . grad rho`.
pub fn eikonal_pair_residuals(
    ansatz: &UniformAnsatz,
) -> Result<(ScalarField2D, ScalarField2D)> {
    let gt = gradient(&ansatz.theta)?;
    let gr = gradient(&ansatz.rho)?;
    let gt2 = dot(&gt, &gt)?;
    let gr2 = dot(&gr, &gr)?;
    let cross = dot(&gt, &gr)?;
    let grid = ansatz.theta.grid();
    let mut r1 = Vec::with_capacity(grid.len());
    let mut r2 = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        r1.push(gt2.values()[k] + ansatz.rho.values()[k] * gr2.values()[k] - 1.0);
        r2.push(2.0 * cross.values()[k]);
    }
    Ok((
        ScalarField2D::new(grid.clone(), r1)?,
        ScalarField2D::new(grid.clone(), r2)?,
    ))
}

/// The two geometrical-optics phases `psi_pm = theta +/- (2/3) rho^(3/2)`.
///
/// Requires `rho >= 0` on the grid (the illuminated closure); on the caustic
/// itself the two phases merge into theta.
pub fn combine_phases(ansatz: &UniformAnsatz) -> Result<(ScalarField2D, ScalarField2D)> {
    if let Some(k) = ansatz.rho.values().iter().position(|&r| r < 0.0) {
        return Err(Error::WrongZone {
            rho: ansatz.rho.values()[k],
            index: k,
        });
    }
    let grid = ansatz.theta.grid();
    let mut plus = Vec::with_capacity(grid.len());
    let mut minus = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let th = ansatz.theta.values()[k];
        let half = 2.0 / 3.0 * ansatz.rho.values()[k].powf(1.5);
        plus.push(th + half);
        minus.push(th - half);
    }
    Ok((
        ScalarField2D::new(grid.clone(), plus)?,
        ScalarField2D::new(grid.clone(), minus)?,
    ))
}

/// Residuals of the next-order layer equations:
///
/// ```text
/// r15 = 2 grad theta . grad g0 + (lap theta) g0
///       + 2 rho grad rho . grad g1 + rho (lap rho) g1 + (grad rho)^2 g1
/// r16 = 2 grad rho . grad g0 + (lap rho) g0
///       + 2 grad theta . grad g1 + (lap theta) g1
/// ```
pub fn transport_pair_residuals(
    ansatz: &UniformAnsatz,
) -> Result<(ScalarField2D, ScalarField2D)> {
    let gt = gradient(&ansatz.theta)?;
    let gr = gradient(&ansatz.rho)?;
    let gg0 = gradient(&ansatz.g0)?;
    let gg1 = gradient(&ansatz.g1)?;
    let lt = laplacian(&ansatz.theta)?;
    let lr = laplacian(&ansatz.rho)?;
    let t_dot_g0 = dot(&gt, &gg0)?;
    let t_dot_g1 = dot(&gt, &gg1)?;
    let r_dot_g0 = dot(&gr, &gg0)?;
    let r_dot_g1 = dot(&gr, &gg1)?;
    let gr2 = dot(&gr, &gr)?;
    let grid = ansatz.theta.grid();
    let mut r15 = Vec::with_capacity(grid.len());
    let mut r16 = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let rho = ansatz.rho.values()[k];
        let g0 = ansatz.g0.values()[k];
        let g1 = ansatz.g1.values()[k];
        r15.push(
            2.0 * t_dot_g0.values()[k]
                + lt.values()[k] * g0
                + 2.0 * rho * r_dot_g1.values()[k]
                + rho * lr.values()[k] * g1
                + gr2.values()[k] * g1,
        );
        r16.push(
            2.0 * r_dot_g0.values()[k]
                + lr.values()[k] * g0
                + 2.0 * t_dot_g1.values()[k]
                + lt.values()[k] * g1,
        );
    }
    Ok((
        ScalarField2D::new(grid.clone(), r15)?,
        ScalarField2D::new(grid.clone(), r16)?,
    ))
}

/// Geometrical-optics amplitudes `z_pm = (g0 +/- sqrt(rho) g1) / rho^(1/4)`.
///
/// Requires `rho > 0` strictly (the open illuminated zone).
pub fn z_variables(ansatz: &UniformAnsatz) -> Result<(ScalarField2D, ScalarField2D)> {
    if let Some(k) = ansatz.rho.values().iter().position(|&r| r <= 0.0) {
        return Err(Error::WrongZone {
            rho: ansatz.rho.values()[k],
            index: k,
        });
    }
    let grid = ansatz.theta.grid();
    let mut plus = Vec::with_capacity(grid.len());
    let mut minus = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let rho = ansatz.rho.values()[k];
        let g0 = ansatz.g0.values()[k];
        let g1 = ansatz.g1.values()[k];
        let root = rho.sqrt();
        let quarter = rho.powf(0.25);
        plus.push((g0 + root * g1) / quarter);
        minus.push((g0 - root * g1) / quarter);
    }
    Ok((
        ScalarField2D::new(grid.clone(), plus)?,
        ScalarField2D::new(grid.clone(), minus)?,
    ))
}

/// Evaluate the uniform field pointwise. Finite everywhere, including the
/// caustic zone; errors only if `k^(2/3) rho` leaves the Airy solution's
/// evaluated interval.
pub fn evaluate_uniform_field(
    ansatz: &UniformAnsatz,
    airy: &AirySolution,
) -> Result<ComplexField2D> {
    let grid = ansatz.theta.grid();
    let k = ansatz.wave_number;
    let k23 = k.powf(2.0 / 3.0);
    let k13 = k.powf(1.0 / 3.0);
    let mut values = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        let (v, vp) = airy.eval(k23 * ansatz.rho.values()[idx])?;
        let g0 = ansatz.g0.values()[idx];
        let g1 = ansatz.g1.values()[idx];
        // g0 V + (g1 / i k^(1/3)) V' = g0 V - i (g1 / k^(1/3)) V'
        let amplitude = Complex64::new(g0 * v, -g1 * vp / k13);
        let phase = Complex64::from_polar(1.0, k * ansatz.theta.values()[idx]);
        values.push(amplitude * phase);
    }
    ComplexField2D::new(grid.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;

    const FOLD_C: f64 = 1.310_370_697_104_448; // (9/4)^(1/3)

    fn const_ansatz(
        grid: &Grid2D,
        theta: f64,
        rho: f64,
        g0: f64,
        g1: f64,
        k: f64,
    ) -> UniformAnsatz {
        UniformAnsatz::new(
            ScalarField2D::constant(grid.clone(), theta).unwrap(),
            ScalarField2D::constant(grid.clone(), rho).unwrap(),
            ScalarField2D::constant(grid.clone(), g0).unwrap(),
            ScalarField2D::constant(grid.clone(), g1).unwrap(),
            k,
        )
        .unwrap()
    }

    fn illuminated_fold(grid: &Grid2D, k: f64) -> UniformAnsatz {
        UniformAnsatz::new(
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            ScalarField2D::from_fn(grid.clone(), |_, y| FOLD_C * y.powf(2.0 / 3.0)).unwrap(),
            ScalarField2D::constant(grid.clone(), 1.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            k,
        )
        .unwrap()
    }

    #[test]
    fn plane_wave_ansatz_solves_layer_equations() {
        let grid = Grid2D::square(0.0, 1.0, 21).unwrap();
        let ansatz = UniformAnsatz::new(
            ScalarField2D::from_fn(grid.clone(), |x, _| x).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 1.0).unwrap(),
            ScalarField2D::constant(grid, 0.0).unwrap(),
            10.0,
        )
        .unwrap();
        let (r1, r2) = eikonal_pair_residuals(&ansatz).unwrap();
        assert!(r1.max_abs() < 1e-12);
        assert!(r2.max_abs() < 1e-12);
    }

    #[test]
    fn canonical_fold_solves_the_phase_pair() {
        // rho (rho')^2 = (9/4)(4/9) = 1 away from the caustic
        let grid = Grid2D::new(0.0, 1.0, 0.5, 2.0, 21, 161).unwrap();
        let ansatz = illuminated_fold(&grid, 100.0);
        let (r1, r2) = eikonal_pair_residuals(&ansatz).unwrap();
        assert!(r1.max_abs() < 1e-3, "r1 = {}", r1.max_abs());
        assert!(r2.max_abs() < 1e-12, "r2 = {}", r2.max_abs());
    }

    #[test]
    fn linear_rho_exposes_a_non_solution() {
        let grid = Grid2D::square(0.25, 1.0, 31).unwrap();
        let ansatz = UniformAnsatz::new(
            ScalarField2D::from_fn(grid.clone(), |x, _| x).unwrap(),
            ScalarField2D::from_fn(grid.clone(), |_, y| y).unwrap(),
            ScalarField2D::constant(grid.clone(), 1.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            10.0,
        )
        .unwrap();
        let (r1, r2) = eikonal_pair_residuals(&ansatz).unwrap();
        for (i, j, _, y) in grid.nodes() {
            assert!((r1.get(i, j) - y).abs() < 1e-10, "r1 should equal rho = y");
            assert!(r2.get(i, j).abs() < 1e-12);
        }
    }

    #[test]
    fn phases_merge_on_the_caustic() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let ansatz = const_ansatz(&grid, 0.3, 0.0, 1.0, 0.0, 5.0);
        let (plus, minus) = combine_phases(&ansatz).unwrap();
        for k in 0..grid.len() {
            assert_eq!(plus.values()[k], 0.3);
            assert_eq!(minus.values()[k], 0.3);
        }
    }

    #[test]
    fn canonical_fold_phases_are_plus_minus_y() {
        let grid = Grid2D::new(0.0, 1.0, 0.1, 2.0, 5, 41).unwrap();
        let ansatz = illuminated_fold(&grid, 10.0);
        let (plus, minus) = combine_phases(&ansatz).unwrap();
        for (i, j, _, y) in grid.nodes() {
            assert!((plus.get(i, j) - y).abs() < 1e-12);
            assert!((minus.get(i, j) + y).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_rho_shifts_phases_by_a_twelfth() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let ansatz = UniformAnsatz::new(
            ScalarField2D::from_fn(grid.clone(), |x, _| x).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.25).unwrap(),
            ScalarField2D::constant(grid.clone(), 1.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            10.0,
        )
        .unwrap();
        let (plus, minus) = combine_phases(&ansatz).unwrap();
        for (i, j, x, _) in grid.nodes() {
            assert!((plus.get(i, j) - (x + 1.0 / 12.0)).abs() < 1e-15);
            assert!((minus.get(i, j) - (x - 1.0 / 12.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn combined_phases_satisfy_the_eikonal_identity() {
        // |grad psi_pm|^2 - 1 = r13 +/- sqrt(rho) r14, checked numerically
        // on a smooth ansatz that does not solve the layer equations
        let grid = Grid2D::square(0.3, 1.2, 121).unwrap();
        let ansatz = UniformAnsatz::new(
            ScalarField2D::from_fn(grid.clone(), |x, y| x + 0.1 * (y * 1.3).sin()).unwrap(),
            ScalarField2D::from_fn(grid.clone(), |x, y| 0.5 + 0.2 * x * y).unwrap(),
            ScalarField2D::constant(grid.clone(), 1.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            10.0,
        )
        .unwrap();
        let (r1, r2) = eikonal_pair_residuals(&ansatz).unwrap();
        let (plus, minus) = combine_phases(&ansatz).unwrap();
        let gp = gradient(&plus).unwrap();
        let gm = gradient(&minus).unwrap();
        let mut worst = 0.0f64;
        for (i, j, _, _) in grid.nodes() {
            let rho = ansatz.rho.get(i, j);
            let (px, py) = gp.get(i, j);
            let (mx, my) = gm.get(i, j);
            let lhs_p = px * px + py * py - 1.0;
            let lhs_m = mx * mx + my * my - 1.0;
            let rhs_p = r1.get(i, j) + rho.sqrt() * r2.get(i, j);
            let rhs_m = r1.get(i, j) - rho.sqrt() * r2.get(i, j);
            worst = worst.max((lhs_p - rhs_p).abs()).max((lhs_m - rhs_m).abs());
        }
        assert!(worst < 5e-5, "identity violated by {worst}");
    }

    #[test]
    fn transport_residuals_vanish_for_zero_amplitudes() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let ansatz = const_ansatz(&grid, 0.0, 0.5, 0.0, 0.0, 5.0);
        let (r15, r16) = transport_pair_residuals(&ansatz).unwrap();
        assert_eq!(r15.max_abs(), 0.0);
        assert_eq!(r16.max_abs(), 0.0);
    }

    #[test]
    fn constant_fields_solve_the_transport_pair() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let ansatz = UniformAnsatz::new(
            ScalarField2D::from_fn(grid.clone(), |x, _| x).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.4).unwrap(),
            ScalarField2D::constant(grid.clone(), 2.0).unwrap(),
            ScalarField2D::constant(grid.clone(), 0.0).unwrap(),
            5.0,
        )
        .unwrap();
        let (r15, r16) = transport_pair_residuals(&ansatz).unwrap();
        assert!(r15.max_abs() < 1e-12);
        assert!(r16.max_abs() < 1e-12);
    }

    #[test]
    fn canonical_fold_transport_residual_is_laplacian_of_rho() {
        let grid = Grid2D::new(0.0, 1.0, 0.5, 2.0, 9, 201).unwrap();
        let ansatz = illuminated_fold(&grid, 10.0);
        let (r15, r16) = transport_pair_residuals(&ansatz).unwrap();
        assert!(r15.max_abs() < 1e-10, "r15 = {}", r15.max_abs());
        // analytic laplacian of c y^(2/3) is -(2c/9) y^(-4/3)
        for (i, j, _, y) in grid.nodes() {
            if j == 0 || j == grid.ny - 1 {
                continue; // one-sided stencil rows carry a larger constant
            }
            let expected = -2.0 * FOLD_C / 9.0 * y.powf(-4.0 / 3.0);
            assert!(
                (r16.get(i, j) - expected).abs() < 2e-4,
                "at y = {y}: {} vs {expected}",
                r16.get(i, j)
            );
        }
    }

    #[test]
    fn z_variables_collapse_and_antisymmetry() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        // g1 = 0: both z variables equal g0 / rho^(1/4)
        let a = const_ansatz(&grid, 0.0, 0.0625, 2.0, 0.0, 5.0);
        let (zp, zm) = z_variables(&a).unwrap();
        for k in 0..grid.len() {
            let expected = 2.0 / 0.0625f64.powf(0.25);
            assert!((zp.values()[k] - expected).abs() < 1e-14);
            assert_eq!(zp.values()[k], zm.values()[k]);
        }
        // g0 = 0: z+ = -z-
        let a = const_ansatz(&grid, 0.0, 0.0625, 0.0, 1.5, 5.0);
        let (zp, zm) = z_variables(&a).unwrap();
        for k in 0..grid.len() {
            assert_eq!(zp.values()[k], -zm.values()[k]);
        }
    }

    #[test]
    fn z_variables_hand_value() {
        // g0 = 1, g1 = 2, rho = 1/16: z+ = (1 + 2/4)/(1/2) = 3, z- = 1
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let a = const_ansatz(&grid, 0.0, 1.0 / 16.0, 1.0, 2.0, 5.0);
        let (zp, zm) = z_variables(&a).unwrap();
        assert!((zp.values()[0] - 3.0).abs() < 1e-14);
        assert!((zm.values()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn z_variables_need_strictly_positive_rho() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let a = const_ansatz(&grid, 0.0, 0.0, 1.0, 0.0, 5.0);
        assert!(matches!(z_variables(&a), Err(Error::WrongZone { .. })));
    }

    #[test]
    fn zero_amplitudes_give_zero_field() {
        let grid = Grid2D::square(-0.5, 0.5, 21).unwrap();
        let ansatz = UniformAnsatz::canonical_fold(grid, 10.0).unwrap();
        let ansatz = UniformAnsatz::new(
            ansatz.theta.clone(),
            ansatz.rho.clone(),
            ScalarField2D::constant(ansatz.theta.grid().clone(), 0.0).unwrap(),
            ansatz.g1.clone(),
            10.0,
        )
        .unwrap();
        let airy = AirySolution::ai_branch(-10.0, 10.0).unwrap();
        let field = evaluate_uniform_field(&ansatz, &airy).unwrap();
        assert!(field.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn field_is_finite_and_nonzero_on_the_caustic() {
        // grid with exact rho = 0 nodes along y = 0
        let grid = Grid2D::new(0.0, 1.0, -0.5, 0.5, 5, 21).unwrap();
        let k = 10.0;
        let ansatz = UniformAnsatz::canonical_fold(grid.clone(), k).unwrap();
        let airy = AirySolution::ai_branch(-15.0, 15.0).unwrap();
        let field = evaluate_uniform_field(&ansatz, &airy).unwrap();
        let zones = ansatz.zones();
        let mut caustic_nodes = 0;
        for (i, j, _, y) in grid.nodes() {
            let z = field.get(i, j);
            assert!(z.re.is_finite() && z.im.is_finite());
            if y == 0.0 {
                caustic_nodes += 1;
                assert_eq!(zones[grid.idx(i, j)], Zone::Caustic);
                // u = g0 V(0) on the caustic
                assert!((z.re - crate::airy::AI_ZERO).abs() < 1e-13);
                assert!(z.im.abs() < 1e-15);
            }
        }
        assert!(caustic_nodes > 0);
    }

    #[test]
    fn zone_partition_is_exhaustive_and_exclusive() {
        let grid = Grid2D::new(0.0, 1.0, -1.0, 1.0, 11, 41).unwrap();
        let ansatz = UniformAnsatz::canonical_fold(grid.clone(), 10.0).unwrap();
        let zones = ansatz.zones();
        assert_eq!(zones.len(), grid.len());
        for (k, &r) in ansatz.rho.values().iter().enumerate() {
            let z = zones[k];
            let w = ansatz.caustic_zone_width();
            let expected = if r.abs() <= w {
                Zone::Caustic
            } else if r > 0.0 {
                Zone::Illuminated
            } else {
                Zone::Shadow
            };
            assert_eq!(z, expected);
        }
    }

    #[test]
    fn deep_shadow_is_exponentially_small() {
        let grid = Grid2D::new(0.0, 1.0, -0.7, -0.6, 3, 5).unwrap();
        let k = 100.0;
        let ansatz = UniformAnsatz::canonical_fold(grid.clone(), k).unwrap();
        let airy = AirySolution::ai_branch(-30.0, 30.0).unwrap();
        let field = evaluate_uniform_field(&ansatz, &airy).unwrap();
        // rho(-2/3) = -1, so k^(2/3) rho < -21 across this strip
        for z in field.values() {
            assert!(z.norm() < 1e-12, "|u| = {:e}", z.norm());
        }
    }

    #[test]
    fn airy_range_violation_is_reported() {
        let grid = Grid2D::new(0.0, 1.0, -1.0, 1.0, 5, 9).unwrap();
        let ansatz = UniformAnsatz::canonical_fold(grid, 100.0).unwrap();
        let airy = AirySolution::ai_branch(-5.0, 5.0).unwrap();
        assert!(matches!(
            evaluate_uniform_field(&ansatz, &airy),
            Err(Error::AiryRangeExceeded { .. })
        ));
    }

    #[test]
    fn illuminated_zone_matches_two_wave_optics_within_two_percent() {
        // oracle: the two-ray sum with amplitudes z_pm/2 scaled by
        // 1/(sqrt(pi) k^(1/6)) and the fixed -pi/4 / +pi/4 phase offsets
        // from Airy asymptotics. The error is measured against the wave
        // amplitude (the envelope |A+| + |A-|): pointwise ratios blow up at
        // interference nulls where the oracle itself vanishes.
        let k = 100.0f64;
        let k23 = k.powf(2.0 / 3.0);
        let y_min = (5.0 / k23 / FOLD_C).powf(1.5); // k^(2/3) rho >= 5
        let grid = Grid2D::new(0.0, 1.0, y_min, 2.0, 3, 400).unwrap();
        let ansatz = illuminated_fold(&grid, k);
        let airy = AirySolution::ai_branch(-1.0, k23 * FOLD_C * 2.0f64.powf(2.0 / 3.0) + 1.0)
            .unwrap();
        let field = evaluate_uniform_field(&ansatz, &airy).unwrap();
        let (zp, zm) = z_variables(&ansatz).unwrap();
        let (psi_p, psi_m) = combine_phases(&ansatz).unwrap();
        let pref = 0.5 / (std::f64::consts::PI.sqrt() * k.powf(1.0 / 6.0));
        let mut checked = 0;
        for (i, j, _, _) in grid.nodes() {
            if k23 * ansatz.rho.get(i, j) < 5.0 {
                continue;
            }
            let a_plus = pref * zp.get(i, j);
            let a_minus = pref * zm.get(i, j);
            let go = Complex64::from_polar(a_plus, k * psi_p.get(i, j) - std::f64::consts::FRAC_PI_4)
                + Complex64::from_polar(a_minus, k * psi_m.get(i, j) + std::f64::consts::FRAC_PI_4);
            let u = field.get(i, j);
            let rel = (u - go).norm() / (a_plus + a_minus);
            assert!(
                rel <= 0.02,
                "at rho = {}: |u| = {}, |go| = {}, rel = {rel}",
                ansatz.rho.get(i, j),
                u.norm(),
                go.norm()
            );
            checked += 1;
        }
        assert!(checked > 300, "too few illuminated nodes checked: {checked}");
    }
}
