//! Tidal-bore jump over a floor incline.
//!
//! A steady current of speed `u` over depth `H` meets a floor rise `delta`
//! and responds with a surface elevation `eps`. Energy conservation and
//! continuity combine into a single cubic relation in `eps`; linearizing in
//! `eps` and `delta` gives the closed form `eps = delta / (1 - gH/u^2)`.
//! The sign of the response flips between tranquil (F < 1) and shooting
//! (F > 1) flow. Turbulence is ignored throughout.

use crate::error::{Error, Result};
use crate::numeric::{bisect_newton, expand_bracket};

/// Froude classification tolerance for exact ties.
pub const FROUDE_TIE_TOL: f64 = 1e-12;
/// Guard band on |F - 1| inside which the elevation formulas blow up.
pub const CRITICAL_GUARD: f64 = 1e-9;
/// |delta|/H above which the small-incline assumption is dubious.
pub const SLENDERNESS_WARN_RATIO: f64 = 0.1;
/// Relative residual demanded of the exact root.
pub const EXACT_RESIDUAL_TOL: f64 = 1e-13;

/// Inputs of the jump model.
#[derive(Debug, Clone, Copy)]
pub struct BoreInput {
    /// Undisturbed depth.
    pub depth: f64,
    /// Floor rise over the incline.
    pub delta: f64,
    /// Upstream flow speed.
    pub u: f64,
    /// Gravitational acceleration.
    pub g: f64,
}

impl BoreInput {
    pub fn new(depth: f64, delta: f64, u: f64, g: f64) -> Result<Self> {
        if !(depth.is_finite() && delta.is_finite() && u.is_finite() && g.is_finite()) {
            return Err(Error::NumericalInput("non-finite bore input".into()));
        }
        if depth <= 0.0 {
            return Err(Error::NumericalInput(format!("depth H = {depth} must be positive")));
        }
        if g <= 0.0 {
            return Err(Error::NumericalInput(format!("gravity g = {g} must be positive")));
        }
        if delta.abs() >= depth {
            return Err(Error::NumericalInput(format!(
                "floor rise |delta| = {} must be below the depth {depth}",
                delta.abs()
            )));
        }
        Ok(Self { depth, delta, u, g })
    }

    /// Undisturbed propagation speed c = sqrt(gH).
    pub fn c(&self) -> f64 {
        (self.g * self.depth).sqrt()
    }

    /// True when the incline is too tall for the first-order model.
    pub fn slenderness_warning(&self) -> Option<String> {
        let ratio = self.delta.abs() / self.depth;
        (ratio > SLENDERNESS_WARN_RATIO).then(|| {
            format!("|delta|/H = {ratio:.3} exceeds {SLENDERNESS_WARN_RATIO}; first-order elevation is unreliable")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowTag {
    Tranquil,
    Critical,
    Shooting,
}

impl FlowTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowTag::Tranquil => "tranquil",
            FlowTag::Critical => "critical",
            FlowTag::Shooting => "shooting",
        }
    }
}

/// Froude number with its regime tag.
#[derive(Debug, Clone, Copy)]
pub struct FlowRegime {
    pub tag: FlowTag,
    pub froude: f64,
}

/// Classify one-dimensional flow: F = |u| / c.
pub fn froude(u: f64, c: f64) -> Result<FlowRegime> {
    if !(c.is_finite() && u.is_finite()) {
        return Err(Error::NumericalInput("non-finite froude input".into()));
    }
    if c <= 0.0 {
        return Err(Error::NumericalInput(format!("propagation speed c = {c} must be positive")));
    }
    let f = u.abs() / c;
    let tag = if (f - 1.0).abs() <= FROUDE_TIE_TOL {
        FlowTag::Critical
    } else if f < 1.0 {
        FlowTag::Tranquil
    } else {
        FlowTag::Shooting
    };
    Ok(FlowRegime { tag, froude: f })
}

fn guard_critical(input: &BoreInput) -> Result<()> {
    if input.u == 0.0 {
        return Err(Error::SingularRegime { deviation: 1.0 });
    }
    let f = input.u.abs() / input.c();
    let dev = (f - 1.0).abs();
    if dev <= CRITICAL_GUARD {
        return Err(Error::SingularRegime { deviation: dev });
    }
    Ok(())
}

/// First-order elevation eps = delta / (1 - (c/u)^2).
pub fn elevation_first_order(input: &BoreInput) -> Result<f64> {
    guard_critical(input)?;
    let ratio = input.c() / input.u;
    Ok(input.delta / (1.0 - ratio * ratio))
}

/// Residual of the combined energy-continuity relation at elevation `eps`:
/// `(H^2 + 2 H eps + eps^2) 2 g eps - u^2 (2H + eps + delta)(eps - delta)`.
pub fn jump_relation_residual(input: &BoreInput, eps: f64) -> f64 {
    let h = input.depth;
    let lhs = (h * h + 2.0 * h * eps + eps * eps) * 2.0 * input.g * eps;
    let rhs = input.u * input.u * (2.0 * h + eps + input.delta) * (eps - input.delta);
    lhs - rhs
}

fn jump_relation_derivative(input: &BoreInput, eps: f64) -> f64 {
    let h = input.depth;
    let he = h + eps;
    let dlhs = 2.0 * input.g * (he * he + eps * 2.0 * he);
    let drhs = input.u * input.u * ((eps - input.delta) + (2.0 * h + eps + input.delta));
    dlhs - drhs
}

/// Exact elevation: the root of the combined relation on the branch through
/// `(delta, eps) = (0, 0)`, bracketed near the first-order value and polished
/// to relative residual `EXACT_RESIDUAL_TOL`.
pub fn elevation_exact(input: &BoreInput) -> Result<f64> {
    guard_critical(input)?;
    if input.delta == 0.0 {
        return Ok(0.0);
    }
    let eps1 = elevation_first_order(input)?;
    let window = 0.5 * input.depth;
    let f = |e: f64| jump_relation_residual(input, e);
    let df = |e: f64| jump_relation_derivative(input, e);
    let width = (2.0 * eps1.abs()).max(1e-6 * input.depth);
    let bracket = expand_bracket(&f, eps1, width, -window, window)
        .ok_or(Error::NoPhysicalRoot { window })?;
    let eps = bisect_newton(&f, &df, bracket, 1e-15 * input.depth)?;
    // scale-relative residual check
    let h = input.depth;
    let lhs = (h * h + 2.0 * h * eps + eps * eps) * 2.0 * input.g * eps;
    let rhs = input.u * input.u * (2.0 * h + eps + input.delta) * (eps - input.delta);
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    if (lhs - rhs).abs() > EXACT_RESIDUAL_TOL * scale {
        return Err(Error::RootFind(format!(
            "jump-relation residual {:e} above tolerance",
            (lhs - rhs).abs() / scale
        )));
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn input(depth: f64, delta: f64, u: f64, g: f64) -> BoreInput {
        BoreInput::new(depth, delta, u, g).unwrap()
    }

    #[test]
    fn froude_classifies_three_regimes() {
        let r = froude(1.0, 2.0).unwrap();
        assert_eq!(r.tag, FlowTag::Tranquil);
        assert!((r.froude - 0.5).abs() < 1e-15);
        let r = froude(3.0, 3.0).unwrap();
        assert_eq!(r.tag, FlowTag::Critical);
        let r = froude(4.0, 2.0).unwrap();
        assert_eq!(r.tag, FlowTag::Shooting);
        assert!((r.froude - 2.0).abs() < 1e-15);
    }

    #[test]
    fn froude_rejects_bad_speed() {
        assert!(froude(1.0, 0.0).is_err());
        assert!(froude(1.0, -2.0).is_err());
    }

    proptest! {
        #[test]
        fn froude_tag_scale_invariant(u in 0.01..10.0f64, c in 0.01..10.0f64, lambda in 0.01..100.0f64) {
            let a = froude(u, c).unwrap();
            let b = froude(lambda * u, lambda * c).unwrap();
            prop_assert_eq!(a.tag, b.tag);
        }
    }

    #[test]
    fn no_incline_means_no_elevation() {
        for u in [0.5, 1.0, 7.0] {
            let inp = input(1.0, 0.0, u, 9.8);
            assert_eq!(elevation_first_order(&inp).unwrap(), 0.0);
            assert_eq!(elevation_exact(&inp).unwrap(), 0.0);
        }
    }

    #[test]
    fn first_order_tranquil_example() {
        // H = 1, g = 9.8, u = 1: eps = 0.01 / (1 - 9.8)
        let inp = input(1.0, 0.01, 1.0, 9.8);
        let eps = elevation_first_order(&inp).unwrap();
        let expected = 0.01 / (1.0 - 9.8);
        assert!((eps - expected).abs() < 1e-18);
        assert!((eps - (-0.001_136_363_636_363_636_3)).abs() < 1e-15);
    }

    #[test]
    fn elevation_signs_by_regime() {
        // tranquil flow, rising floor -> depression
        let tranquil = input(1.0, 0.01, 1.0, 9.8);
        assert_eq!(froude(tranquil.u, tranquil.c()).unwrap().tag, FlowTag::Tranquil);
        assert!(elevation_first_order(&tranquil).unwrap() < 0.0);
        // shooting flow, rising floor -> elevation
        let shooting = input(1.0, 0.01, 10.0, 9.8);
        assert_eq!(froude(shooting.u, shooting.c()).unwrap().tag, FlowTag::Shooting);
        assert!(elevation_first_order(&shooting).unwrap() > 0.0);
    }

    #[test]
    fn first_order_is_linear_in_delta() {
        let base = input(1.0, 1e-3, 2.0, 9.8);
        let eps1 = elevation_first_order(&base).unwrap();
        for k in [2.0, 5.0, -3.0] {
            let scaled = input(1.0, k * 1e-3, 2.0, 9.8);
            let eps_k = elevation_first_order(&scaled).unwrap();
            assert!((eps_k - k * eps1).abs() <= 1e-15 * eps_k.abs().max(1.0));
        }
    }

    #[test]
    fn critical_regime_is_rejected() {
        let u = (9.8f64).sqrt(); // F = 1 exactly
        let inp = input(1.0, 0.01, u, 9.8);
        assert!(matches!(elevation_first_order(&inp), Err(Error::SingularRegime { .. })));
        assert!(matches!(elevation_exact(&inp), Err(Error::SingularRegime { .. })));
        let inp = input(1.0, 0.01, 0.0, 9.8);
        assert!(matches!(elevation_first_order(&inp), Err(Error::SingularRegime { .. })));
    }

    #[test]
    fn exact_root_satisfies_relation() {
        for (u, delta) in [(1.0, 1e-3), (1.0, -1e-3), (8.0, 0.05), (0.3, 1e-4)] {
            let inp = input(1.0, delta, u, 9.8);
            let eps = elevation_exact(&inp).unwrap();
            let h = inp.depth;
            let lhs = (h * h + 2.0 * h * eps + eps * eps) * 2.0 * inp.g * eps;
            let rhs = inp.u * inp.u * (2.0 * h + eps + inp.delta) * (eps - inp.delta);
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            assert!(
                (lhs - rhs).abs() <= EXACT_RESIDUAL_TOL * scale,
                "residual {:e} for u={u}, delta={delta}",
                (lhs - rhs).abs() / scale
            );
        }
    }

    #[test]
    fn exact_matches_first_order_to_second_order() {
        // |exact - first_order| should shrink ~ delta^2 over three decades
        let mut errors = Vec::new();
        for delta in [1e-2, 1e-3, 1e-4] {
            let inp = input(1.0, delta, 1.0, 9.8);
            let e_exact = elevation_exact(&inp).unwrap();
            let e_first = elevation_first_order(&inp).unwrap();
            errors.push((e_exact - e_first).abs());
        }
        let r01 = errors[0] / errors[1];
        let r12 = errors[1] / errors[2];
        assert!((80.0..=120.0).contains(&r01), "ratio {r01}");
        assert!((80.0..=120.0).contains(&r12), "ratio {r12}");
    }

    #[test]
    fn selected_root_is_continuous_in_delta() {
        // monotone sampling across [-1e-3, 1e-3] H: no branch jumping
        let mut last: Option<(f64, f64)> = None;
        for k in -20..=20 {
            let delta = 1e-3 * k as f64 / 20.0;
            let inp = input(1.0, delta, 2.0, 9.8);
            let eps = elevation_exact(&inp).unwrap();
            if let Some((d_prev, e_prev)) = last {
                let slope = (eps - e_prev) / (delta - d_prev).abs().max(1e-30);
                assert!(slope.abs() < 10.0, "jump between {d_prev} and {delta}");
            }
            last = Some((delta, eps));
        }
    }

    #[test]
    fn rejects_incline_taller_than_depth() {
        assert!(BoreInput::new(1.0, 1.5, 1.0, 9.8).is_err());
        assert!(BoreInput::new(-1.0, 0.0, 1.0, 9.8).is_err());
    }

    #[test]
    fn slenderness_warning_threshold() {
        assert!(input(1.0, 0.05, 1.0, 9.8).slenderness_warning().is_none());
        assert!(input(1.0, 0.2, 1.0, 9.8).slenderness_warning().is_some());
    }
}
