//! Small numerical kernels shared across the crate: quadrature, root
//! finding, 1-D minimization, and phase-wrapping arithmetic.

use crate::error::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Representative of `b - a` in the half-open interval (-pi, pi].
///
/// Safe to chain around a loop: summing wrapped steps counts full turns.
pub fn winding_aware_phase_difference(a: f64, b: f64) -> f64 {
    let mut d = (b - a) % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, fm, tol, 48)
}

/// Expand a bracket around `x0` until `f` changes sign, never leaving
/// `[lo, hi]`. Returns the bracketing pair `(a, b)` with `f(a)*f(b) <= 0`.
pub fn expand_bracket<F: Fn(f64) -> f64>(
    f: &F,
    x0: f64,
    initial_width: f64,
    lo: f64,
    hi: f64,
) -> Option<(f64, f64)> {
    let mut w = initial_width.abs().max(f64::MIN_POSITIVE);
    for _ in 0..80 {
        let a = (x0 - w).max(lo);
        let b = (x0 + w).min(hi);
        let fa = f(a);
        let fb = f(b);
        if fa == 0.0 {
            return Some((a, a));
        }
        if fb == 0.0 {
            return Some((b, b));
        }
        if fa * fb < 0.0 {
            return Some((a, b));
        }
        if a == lo && b == hi {
            return None;
        }
        w *= 2.0;
    }
    None
}

/// Bisection to width `xtol`, then Newton polish with derivative `df`.
/// The polish is rejected whenever it leaves the bisection bracket.
pub fn bisect_newton<F, D>(f: &F, df: &D, bracket: (f64, f64), xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut a, mut b) = bracket;
    if a == b {
        return Ok(a);
    }
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::RootFind(format!(
            "no sign change over [{a}, {b}]"
        )));
    }
    while (b - a).abs() > xtol {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            a = m;
            b = m;
            break;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..8 {
        let fx = f(x);
        let dfx = df(x);
        if dfx == 0.0 {
            break;
        }
        let step = fx / dfx;
        let next = x - step;
        if !next.is_finite() || next < a.min(b) || next > a.max(b) {
            break;
        }
        x = next;
        if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    Ok(x)
}

/// Plain bisection on a bracketing interval to width `xtol`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, bracket: (f64, f64), xtol: f64) -> Result<f64> {
    bisect_newton(f, &|_| 0.0, bracket, xtol)
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, xtol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Deterministic 64-bit linear congruential generator for sampling-style
/// tests and seeded sweeps. Constants from Knuth's MMIX.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.state
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn uniform_usize(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }
}

/// FNV-1a 64-bit hash, used for output-file manifests.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x1_0000_0000_01b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phase_difference_small() {
        assert!((winding_aware_phase_difference(0.1, 0.2) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn phase_difference_wraps_across_cut() {
        // 6.2 - 2 pi, evaluated directly from the constants
        let expected = 6.2 - TAU;
        let got = winding_aware_phase_difference(-3.1, 3.1);
        assert!((got - expected).abs() < 1e-15, "got {got}, expected {expected}");
        assert!((got - (-0.083_185_307_179_586_23)).abs() < 1e-12);
    }

    #[test]
    fn phase_difference_identity() {
        for x in [-7.3, -0.1, 0.0, 2.0, 123.456] {
            assert_eq!(winding_aware_phase_difference(x, x), 0.0);
        }
    }

    #[test]
    fn phase_difference_boundary_is_plus_pi() {
        // difference of exactly pi must land on +pi, not -pi
        let d = winding_aware_phase_difference(0.0, PI);
        assert!((d - PI).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn phase_difference_always_in_half_open_interval(a in -50.0..50.0f64, b in -50.0..50.0f64) {
            let d = winding_aware_phase_difference(a, b);
            prop_assert!(d > -PI && d <= PI);
        }
    }

    #[test]
    fn simpson_integrates_polynomials() {
        let f = |x: f64| 3.0 * x * x;
        let v = adaptive_simpson(&f, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_integrates_oscillatory() {
        let f = |x: f64| (10.0 * x).sin();
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-11);
        let exact = (1.0 - (10.0f64).cos()) / 10.0;
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn bisect_newton_finds_cubic_root() {
        let f = |x: f64| x * x * x - 2.0;
        let df = |x: f64| 3.0 * x * x;
        let r = bisect_newton(&f, &df, (0.0, 2.0), 1e-8).unwrap();
        assert!((r - 2.0f64.powf(1.0 / 3.0)).abs() < 1e-13);
    }

    #[test]
    fn golden_section_finds_parabola_min() {
        // flat-bottom limit: a quadratic minimum is only locatable to ~sqrt(eps)
        let f = |x: f64| (x - 0.7) * (x - 0.7) + 1.0;
        let m = golden_section_min(&f, 0.0, 2.0, 1e-10);
        assert!((m - 0.7).abs() < 1e-6);
    }

    #[test]
    fn lcg_is_deterministic() {
        let mut a = Lcg64::new(42);
        let mut b = Lcg64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
