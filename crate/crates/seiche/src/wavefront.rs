//! Wavefronts of plane curves evolving at unit speed along their normals.
//!
//! For a source curve given as a graph `y = f(x)` with unit normal
//! `n = (-f', 1) / sqrt(1 + f'^2)`, the front at time `t` is
//! `W_pm(t)(x) = (x, f(x)) +/- t n(x)`. A front point is singular when both
//! components of its tangent vector vanish; for graphs the second component
//! is `f'` times the first, so the singular set is governed by
//! `sigma_1'(x, t) = 1 +/- t n_1'(x) = 0` and each sample has at most one
//! positive singular time.

use crate::curve::ParametricCurve;
use crate::error::{Error, Result};
use std::sync::Arc;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A source curve `y = f(x)` with derivative, evaluable on an interval.
#[derive(Clone)]
pub struct SourceCurve {
    f: Evaluator,
    fp: Evaluator,
    pub x_min: f64,
    pub x_max: f64,
}

impl std::fmt::Debug for SourceCurve {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("SourceCurve")
            .field("x_min", &self.x_min)
            .field("x_max", &self.x_max)
            .finish()
    }
}

impl SourceCurve {
    pub fn new<F, G>(f: F, fp: G, x_min: f64, x_max: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(x_min < x_max) {
            return Err(Error::NumericalInput("source interval must be nonempty".into()));
        }
        Ok(Self {
            f: Arc::new(f),
            fp: Arc::new(fp),
            x_min,
            x_max,
        })
    }

    /// The quartic source y = x^4.
    pub fn quartic(x_min: f64, x_max: f64) -> Result<Self> {
        Self::new(|x| x.powi(4), |x| 4.0 * x.powi(3), x_min, x_max)
    }

    /// Upper semicircle of radius `r`, trimmed away from the vertical
    /// tangents at |x| = r.
    pub fn semicircle(r: f64, trim: f64) -> Result<Self> {
        if !(r > 0.0 && trim > 0.0 && trim < r) {
            return Err(Error::NumericalInput("need 0 < trim < r".into()));
        }
        let r2 = r * r;
        Self::new(
            move |x| (r2 - x * x).sqrt(),
            move |x| -x / (r2 - x * x).sqrt(),
            -(r - trim),
            r - trim,
        )
    }

    /// A C1 source built from samples by cubic Hermite interpolation with
    /// centered slope estimates.
    pub fn from_table(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() < 3 || xs.len() != ys.len() {
            return Err(Error::NumericalInput(
                "table source needs at least 3 matched samples".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::NumericalInput("table abscissas must increase".into()));
        }
        let n = xs.len();
        let mut slopes = vec![0.0; n];
        for i in 0..n {
            slopes[i] = if i == 0 {
                (ys[1] - ys[0]) / (xs[1] - xs[0])
            } else if i == n - 1 {
                (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2])
            } else {
                (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1])
            };
        }
        let (x_min, x_max) = (xs[0], xs[n - 1]);
        let locate = {
            let xs = xs.clone();
            move |x: f64| -> (usize, f64, f64) {
                let i = match xs.partition_point(|&s| s <= x) {
                    0 => 0,
                    p => (p - 1).min(xs.len() - 2),
                };
                (i, xs[i], xs[i + 1])
            }
        };
        let eval = {
            let locate = locate.clone();
            let ys = ys.clone();
            let slopes = slopes.clone();
            move |x: f64| -> f64 {
                let (i, x0, x1) = locate(x);
                let h = x1 - x0;
                let s = ((x - x0) / h).clamp(0.0, 1.0);
                let (s2, s3) = (s * s, s * s * s);
                (2.0 * s3 - 3.0 * s2 + 1.0) * ys[i]
                    + (s3 - 2.0 * s2 + s) * h * slopes[i]
                    + (-2.0 * s3 + 3.0 * s2) * ys[i + 1]
                    + (s3 - s2) * h * slopes[i + 1]
            }
        };
        let deriv = move |x: f64| -> f64 {
            let (i, x0, x1) = locate(x);
            let h = x1 - x0;
            let s = ((x - x0) / h).clamp(0.0, 1.0);
            let s2 = s * s;
            ((6.0 * s2 - 6.0 * s) * ys[i]
                + (3.0 * s2 - 4.0 * s + 1.0) * h * slopes[i]
                + (-6.0 * s2 + 6.0 * s) * ys[i + 1]
                + (3.0 * s2 - 2.0 * s) * h * slopes[i + 1])
                / h
        };
        Self::new(eval, deriv, x_min, x_max)
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn fp(&self, x: f64) -> f64 {
        (self.fp)(x)
    }

    pub fn uniform_samples(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| self.x_min + (self.x_max - self.x_min) * k as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Unit normal of the graph at `x`: `(-f', 1) / sqrt(1 + f'^2)`.
pub fn unit_normal(src: &SourceCurve, x: f64) -> [f64; 2] {
    let d = src.fp(x);
    let s = (1.0 + d * d).sqrt();
    [-d / s, 1.0 / s]
}

/// Which of the two normal directions the front takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// +n: toward the concave side of the quartic (inward).
    Plus,
    /// -n: the opposite direction.
    Minus,
}

impl Direction {
    fn sign(&self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Plus => "plus",
            Direction::Minus => "minus",
        }
    }
}

/// Front point at parameter `x` and time `t`.
pub fn front_point(src: &SourceCurve, x: f64, t: f64, direction: Direction) -> [f64; 2] {
    let n = unit_normal(src, x);
    let s = direction.sign();
    [x + s * t * n[0], src.f(x) + s * t * n[1]]
}

/// Tangent components (sigma_1', sigma_2') at `x`, by five-point central
/// differences of the front evaluator. The wide fourth-order stencil keeps
/// rounding noise from being amplified by large evolution times when the
/// singular-time root finder divides by the tangent slope.
pub fn front_tangent(src: &SourceCurve, x: f64, t: f64, direction: Direction) -> [f64; 2] {
    let h = 1e-3 * x.abs().max(1.0);
    let p2 = front_point(src, x + 2.0 * h, t, direction);
    let p1 = front_point(src, x + h, t, direction);
    let m1 = front_point(src, x - h, t, direction);
    let m2 = front_point(src, x - 2.0 * h, t, direction);
    let d = |a: f64, b: f64, c: f64, e: f64| (-a + 8.0 * b - 8.0 * c + e) / (12.0 * h);
    [
        d(p2[0], p1[0], m1[0], m2[0]),
        d(p2[1], p1[1], m1[1], m2[1]),
    ]
}

/// A sampled evolved front with tangent data.
#[derive(Debug, Clone)]
pub struct EvolvedFront {
    pub time: f64,
    pub direction: Direction,
    pub curve: ParametricCurve,
    /// (sigma_1', sigma_2') per sample.
    pub tangents: Vec<[f64; 2]>,
}

/// Evolve the source for time `t` along the chosen normal direction.
pub fn evolve(src: &SourceCurve, t: f64, direction: Direction, n_samples: usize) -> Result<EvolvedFront> {
    if t < 0.0 {
        return Err(Error::NumericalInput("evolution time must be >= 0".into()));
    }
    if n_samples < 3 {
        return Err(Error::NumericalInput("need at least 3 samples".into()));
    }
    let xs = src.uniform_samples(n_samples);
    let mut samples = Vec::with_capacity(n_samples);
    let mut tangents = Vec::with_capacity(n_samples);
    for &x in &xs {
        samples.push((x, front_point(src, x, t, direction)));
        tangents.push(front_tangent(src, x, t, direction));
    }
    Ok(EvolvedFront {
        time: t,
        direction,
        curve: ParametricCurve::new(samples)?,
        tangents,
    })
}

/// Per-sample singular times: the positive root of `sigma_1'(x, t) = 0`,
/// cross-checked against `sigma_2' ~ 0`, or None when the tangent never
/// degenerates for positive time.
pub fn singular_times(
    src: &SourceCurve,
    direction: Direction,
    x_range: (f64, f64),
    n_samples: usize,
) -> Result<Vec<(f64, Option<f64>)>> {
    if n_samples < 2 {
        return Err(Error::NumericalInput("need at least 2 samples".into()));
    }
    let (a, b) = x_range;
    if !(a < b && a >= src.x_min - 1e-12 && b <= src.x_max + 1e-12) {
        return Err(Error::NumericalInput("x range outside the source interval".into()));
    }
    let mut out = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let x = a + (b - a) * k as f64 / (n_samples - 1) as f64;
        out.push((x, singular_time_at(src, direction, x)?));
    }
    Ok(out)
}

/// The singular time at one parameter value.
pub fn singular_time_at(src: &SourceCurve, direction: Direction, x: f64) -> Result<Option<f64>> {
    let g = |t: f64| front_tangent(src, x, t, direction)[0];
    // sigma_1' is affine in t with sigma_1'(x, 0) = 1; expand until it
    // changes sign or the slope is provably the wrong way
    let g0 = g(0.0);
    let g1 = g(1.0);
    let slope = g1 - g0;
    if slope >= -1e-14 {
        return Ok(None); // never vanishes for positive time
    }
    let t_guess = -g0 / slope;
    let bracket = match crate::numeric::expand_bracket(&g, t_guess, 0.1 * t_guess.max(1e-6), 0.0, f64::INFINITY) {
        Some(br) => br,
        None => return Ok(None),
    };
    let t_star = crate::numeric::bisect_newton(&g, &|_| slope, bracket, 1e-14 * t_guess.max(1.0))?;
    // both tangent components must vanish together
    let tangent = front_tangent(src, x, t_star, direction);
    let fp_scale = src.fp(x).abs().max(1.0);
    if tangent[1].abs() > 1e-6 * fp_scale * t_star.max(1.0) {
        return Err(Error::RootFind(format!(
            "sigma_2' = {} does not vanish at the sigma_1' root",
            tangent[1]
        )));
    }
    Ok(Some(t_star))
}

/// Earliest singular time over an x interval (golden-section refinement of
/// the sampled minimum). Returns `(x_star, t_star)`.
pub fn first_singular_time(
    src: &SourceCurve,
    direction: Direction,
    x_range: (f64, f64),
    n_scan: usize,
) -> Result<Option<(f64, f64)>> {
    let times = singular_times(src, direction, x_range, n_scan)?;
    let mut best: Option<(f64, f64)> = None;
    for (x, t) in &times {
        if let Some(t) = t {
            if best.map_or(true, |(_, tb)| *t < tb) {
                best = Some((*x, *t));
            }
        }
    }
    let Some((x0, _)) = best else {
        return Ok(None);
    };
    let dx = (x_range.1 - x_range.0) / (n_scan - 1) as f64;
    let lo = (x0 - dx).max(x_range.0);
    let hi = (x0 + dx).min(x_range.1);
    let objective = |x: f64| match singular_time_at(src, direction, x) {
        Ok(Some(t)) => t,
        _ => f64::INFINITY,
    };
    let x_star = crate::numeric::golden_section_min(&objective, lo, hi, 1e-10 * dx.max(1.0));
    let t_star = objective(x_star);
    Ok(Some((x_star, t_star)))
}

/// Indices of front samples where both tangent components are below `tol`.
pub fn detect_front_singularities(front: &EvolvedFront, tol: f64) -> Vec<usize> {
    front
        .tangents
        .iter()
        .enumerate()
        .filter(|(_, t)| t[0].abs() <= tol && t[1].abs() <= tol)
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> SourceCurve {
        SourceCurve::quartic(-2.5, 2.5).unwrap()
    }

    /// Printed closed form of the singular time for y = x^4 along +n.
    fn quartic_singular_time(x: f64) -> f64 {
        let d = 1.0 + (4.0 * x * x * x).powi(2);
        d.powf(1.5) / (12.0 * x * x)
    }

    #[test]
    fn normal_of_flat_curve_points_up() {
        let src = SourceCurve::new(|_| 3.0, |_| 0.0, -1.0, 1.0).unwrap();
        let n = unit_normal(&src, 0.3);
        assert_eq!(n, [0.0, 1.0]);
    }

    #[test]
    fn normal_of_diagonal_line() {
        let src = SourceCurve::new(|x| x, |_| 1.0, -1.0, 1.0).unwrap();
        let n = unit_normal(&src, 0.0);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((n[0] + inv_sqrt2).abs() < 1e-15);
        assert!((n[1] - inv_sqrt2).abs() < 1e-15);
    }

    #[test]
    fn normals_have_unit_length() {
        let src = quartic();
        for k in 0..100 {
            let x = -2.5 + 5.0 * k as f64 / 99.0;
            let n = unit_normal(&src, x);
            assert!(((n[0] * n[0] + n[1] * n[1]).sqrt() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn zero_time_evolution_is_the_identity() {
        let src = quartic();
        let front = evolve(&src, 0.0, Direction::Plus, 41).unwrap();
        for (x, p) in front.curve.samples() {
            assert_eq!(p[0], *x);
            assert!((p[1] - src.f(*x)).abs() < 1e-15);
        }
    }

    #[test]
    fn front_points_sit_at_distance_t() {
        let src = quartic();
        for t in [0.1, 1.0, 7.5] {
            for dir in [Direction::Plus, Direction::Minus] {
                let front = evolve(&src, t, dir, 21).unwrap();
                for (x, p) in front.curve.samples() {
                    let dx = p[0] - x;
                    let dy = p[1] - src.f(*x);
                    assert!(
                        ((dx * dx + dy * dy).sqrt() - t).abs() <= 1e-12 * (1.0 + t),
                        "unit-speed violated at x = {x}, t = {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn directions_are_mirror_offsets() {
        let src = quartic();
        let plus = evolve(&src, 0.7, Direction::Plus, 21).unwrap();
        let minus = evolve(&src, 0.7, Direction::Minus, 21).unwrap();
        for ((x, p), (_, m)) in plus.curve.samples().iter().zip(minus.curve.samples()) {
            let base = [*x, src.f(*x)];
            assert!((p[0] - base[0] + (m[0] - base[0])).abs() < 1e-14);
            assert!((p[1] - base[1] + (m[1] - base[1])).abs() < 1e-14);
        }
    }

    #[test]
    fn quartic_tangent_matches_printed_derivative() {
        // sigma_1+'(x) = 1 - 12 x^2 t / [1 + (4x^3)^2]^(3/2) at (x, t) = (1, 1)
        let src = quartic();
        let tangent = front_tangent(&src, 1.0, 1.0, Direction::Plus);
        let expected = 1.0 - 12.0 / 17.0f64.powf(1.5);
        assert!(
            (tangent[0] - expected).abs() < 1e-9,
            "sigma_1' = {}, printed form {expected}",
            tangent[0]
        );
        // and sigma_2' = f' sigma_1' for graphs
        assert!((tangent[1] - 4.0 * tangent[0]).abs() < 1e-8);
    }

    #[test]
    fn quartic_singular_times_match_closed_form() {
        let src = quartic();
        let times = singular_times(&src, Direction::Plus, (0.2, 2.0), 50).unwrap();
        for (x, t) in times {
            let t = t.expect("inward quartic front must focus");
            let expected = quartic_singular_time(x);
            assert!(
                ((t - expected) / expected).abs() <= 1e-9,
                "t({x}) = {t}, closed form {expected}"
            );
        }
    }

    #[test]
    fn quartic_singular_time_at_unit_x() {
        // 17^(3/2) / 12
        let src = quartic();
        let t = singular_time_at(&src, Direction::Plus, 1.0).unwrap().unwrap();
        let expected = 17.0f64.powf(1.5) / 12.0;
        assert!((t - expected).abs() < 1e-9 * expected);
        assert!((expected - 5.841_066_302_958_352).abs() < 1e-12);
    }

    #[test]
    fn outward_quartic_front_never_focuses() {
        let src = quartic();
        let times = singular_times(&src, Direction::Minus, (0.2, 2.0), 25).unwrap();
        assert!(times.iter().all(|(_, t)| t.is_none()));
    }

    #[test]
    fn earliest_focus_matches_stationarity_condition() {
        // minimizing [1 + 16 x^6]^(3/2) / (12 x^2) gives 56 x^6 = 1
        let src = quartic();
        let (x_star, t_star) = first_singular_time(&src, Direction::Plus, (0.2, 2.0), 200)
            .unwrap()
            .unwrap();
        let x_expected = (1.0 / 56.0f64).powf(1.0 / 6.0);
        assert!(
            (x_star - x_expected).abs() < 1e-4,
            "x* = {x_star}, stationarity {x_expected}"
        );
        assert!((t_star - quartic_singular_time(x_expected)).abs() < 1e-9);
    }

    #[test]
    fn no_singular_samples_before_first_focus() {
        let src = quartic();
        let (_, t_min) = first_singular_time(&src, Direction::Plus, (0.2, 2.0), 100)
            .unwrap()
            .unwrap();
        let front = evolve(&src, 0.9 * t_min, Direction::Plus, 101).unwrap();
        assert!(detect_front_singularities(&front, 1e-3).is_empty());
    }

    #[test]
    fn singular_sample_appears_at_its_closed_form_time() {
        let x0 = 1.0;
        let t0 = quartic_singular_time(x0);
        // sample so that x0 is exactly on the lattice
        let front = evolve(
            &SourceCurve::quartic(0.5, 1.5).unwrap(),
            t0,
            Direction::Plus,
            101,
        )
        .unwrap();
        let hits = detect_front_singularities(&front, 1e-6);
        assert!(!hits.is_empty());
        let dx = 1.0 / 100.0;
        for k in hits {
            let (x, _) = front.curve.samples()[k];
            assert!((x - x0).abs() <= dx + 1e-12, "singular sample at x = {x}");
        }
    }

    #[test]
    fn circle_collapses_to_its_center() {
        let src = SourceCurve::semicircle(1.0, 0.1).unwrap();
        // outward: radius grows, no singularity
        let outward = singular_times(&src, Direction::Plus, (-0.9, 0.9), 21).unwrap();
        assert!(outward.iter().all(|(_, t)| t.is_none()));
        // inward: every sample collapses at t = R
        let inward = singular_times(&src, Direction::Minus, (-0.9, 0.9), 21).unwrap();
        for (x, t) in inward {
            let t = t.expect("inward circle must collapse");
            assert!((t - 1.0).abs() < 1e-9, "t({x}) = {t}");
        }
        // at t = R the whole front is one singular point at the center
        let front = evolve(&src, 1.0, Direction::Minus, 51).unwrap();
        let hits = detect_front_singularities(&front, 1e-6);
        assert_eq!(hits.len(), 51);
        for (_, p) in front.curve.samples() {
            assert!(p[0].abs() < 1e-12 && p[1].abs() < 1e-12);
        }
    }

    #[test]
    fn table_source_tracks_its_generator() {
        let xs: Vec<f64> = (0..41).map(|k| -1.0 + 0.05 * k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let src = SourceCurve::from_table(xs, ys).unwrap();
        for x in [-0.7, -0.33, 0.0, 0.41, 0.88] {
            assert!((src.f(x) - x * x).abs() < 1e-3);
            assert!((src.fp(x) - 2.0 * x).abs() < 1e-2);
        }
    }
}
