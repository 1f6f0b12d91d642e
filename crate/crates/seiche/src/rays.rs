//! Hamiltonian ray tracing and caustic detection.
//!
//! Rays follow the canonical system `dr/dtau = p`, `dp/dtau = grad(n^2)/2`
//! with the eikonal constraint `|p|^2 = n^2(r)`; the accumulated phase obeys
//! `dpsi/dtau = |p|^2`. A one-parameter family of rays sweeps the map
//! `(xi, tau) -> r(xi, tau)`; caustics are exactly the points where its
//! derivative map `Df` drops rank, i.e. where initially distinct rays merge.
//! Rank-one points of plane-to-plane maps are classified into the two
//! Whitney-stable types (fold, cusp) by directional derivatives along the
//! kernel of `Df`.

use crate::error::{Error, Result};
use crate::field::{dot, gradient, laplacian, ScalarField2D};
use crate::parallel;

/// Refractive-index profile with a closed-form gradient of n^2.
#[derive(Debug, Clone, Copy)]
pub enum IndexProfile {
    /// n constant.
    Homogeneous { n: f64 },
    /// n^2 = base + slope * y.
    LinearSquared { base: f64, slope: f64 },
}

impl IndexProfile {
    pub fn n2(&self, _x: f64, y: f64) -> f64 {
        match self {
            IndexProfile::Homogeneous { n } => n * n,
            IndexProfile::LinearSquared { base, slope } => base + slope * y,
        }
    }

    pub fn n(&self, x: f64, y: f64) -> f64 {
        self.n2(x, y).sqrt()
    }

    pub fn grad_n2(&self, _x: f64, _y: f64) -> [f64; 2] {
        match self {
            IndexProfile::Homogeneous { .. } => [0.0, 0.0],
            IndexProfile::LinearSquared { slope, .. } => [0.0, *slope],
        }
    }
}

/// Medium for ray tracing: index profile plus wave number (and optional
/// carrier frequency, kept as metadata only).
#[derive(Debug, Clone, Copy)]
pub struct MediumSpec {
    pub profile: IndexProfile,
    pub wave_number: f64,
    pub omega0: Option<f64>,
}

impl MediumSpec {
    pub fn new(profile: IndexProfile, wave_number: f64, omega0: Option<f64>) -> Result<Self> {
        if !(wave_number.is_finite() && wave_number > 0.0) {
            return Err(Error::NumericalInput(format!(
                "wave number k = {wave_number} must be positive"
            )));
        }
        Ok(Self { profile, wave_number, omega0 })
    }

    pub fn homogeneous(n: f64, wave_number: f64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NumericalInput(format!("index n = {n} must be positive")));
        }
        Self::new(IndexProfile::Homogeneous { n }, wave_number, None)
    }
}

/// Ray phase-space point along the parameter tau.
#[derive(Debug, Clone, Copy)]
pub struct RayState {
    pub r: [f64; 2],
    pub p: [f64; 2],
    /// Accumulated eikonal phase.
    pub psi: f64,
    pub tau: f64,
}

impl RayState {
    /// Launch a ray at `r` in the direction `dir` (need not be normalized);
    /// the momentum is scaled onto the eikonal shell |p| = n(r).
    pub fn launch(r: [f64; 2], dir: [f64; 2], medium: &MediumSpec) -> Result<Self> {
        let len = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt();
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::NumericalInput("launch direction must be nonzero".into()));
        }
        let n = medium.profile.n(r[0], r[1]);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NumericalInput(format!(
                "index not positive at launch point ({}, {})",
                r[0], r[1]
            )));
        }
        Ok(Self {
            r,
            p: [dir[0] / len * n, dir[1] / len * n],
            psi: 0.0,
            tau: 0.0,
        })
    }

    /// Deviation from the eikonal shell, | |p|^2 - n^2 |.
    pub fn constraint_deviation(&self, medium: &MediumSpec) -> f64 {
        let p2 = self.p[0] * self.p[0] + self.p[1] * self.p[1];
        (p2 - medium.profile.n2(self.r[0], self.r[1])).abs()
    }
}

/// One integrated ray.
#[derive(Debug, Clone)]
pub struct RayTrajectory {
    pub states: Vec<RayState>,
}

#[inline]
fn deriv(state: &[f64; 5], medium: &MediumSpec) -> [f64; 5] {
    let g = medium.profile.grad_n2(state[0], state[1]);
    [
        state[2],
        state[3],
        0.5 * g[0],
        0.5 * g[1],
        state[2] * state[2] + state[3] * state[3],
    ]
}

fn rk4_step(state: &[f64; 5], h: f64, medium: &MediumSpec) -> [f64; 5] {
    let k1 = deriv(state, medium);
    let mut s2 = *state;
    for i in 0..5 {
        s2[i] = state[i] + 0.5 * h * k1[i];
    }
    let k2 = deriv(&s2, medium);
    for i in 0..5 {
        s2[i] = state[i] + 0.5 * h * k2[i];
    }
    let k3 = deriv(&s2, medium);
    for i in 0..5 {
        s2[i] = state[i] + h * k3[i];
    }
    let k4 = deriv(&s2, medium);
    let mut out = *state;
    for i in 0..5 {
        out[i] = state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrate a ray with classical fourth-order steps of size `dtau`,
/// landing exactly on `tau_max`.
pub fn trace_ray(
    start: &RayState,
    medium: &MediumSpec,
    tau_max: f64,
    dtau: f64,
) -> Result<RayTrajectory> {
    if !(tau_max > 0.0 && dtau > 0.0) {
        return Err(Error::NumericalInput("tau_max and dtau must be positive".into()));
    }
    let dev = start.constraint_deviation(medium);
    if dev > 1e-10 {
        return Err(Error::EikonalConstraint { deviation: dev });
    }
    let steps = (tau_max / dtau).ceil() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(*start);
    let mut y = [start.r[0], start.r[1], start.p[0], start.p[1], start.psi];
    let mut tau = start.tau;
    for k in 0..steps {
        let target = start.tau + tau_max.min(dtau * (k + 1) as f64);
        let h = target - tau;
        y = rk4_step(&y, h, medium);
        tau = target;
        // grazing contact with n^2 = 0 (a turning point) is fine - the
        // stepper never takes a square root - but a state that went
        // non-finite or stepped into n^2 < 0 has left the medium
        if y.iter().any(|v| !v.is_finite())
            || medium.profile.n2(y[0], y[1]) < -1e-12 * medium.profile.n2(start.r[0], start.r[1])
        {
            return Err(Error::RayExitedDomain { tau });
        }
        states.push(RayState {
            r: [y[0], y[1]],
            p: [y[2], y[3]],
            psi: y[4],
            tau,
        });
    }
    Ok(RayTrajectory { states })
}

/// A one-parameter family of rays on a common (xi, tau) lattice.
#[derive(Debug, Clone)]
pub struct RayFan {
    pub xi: Vec<f64>,
    pub tau: Vec<f64>,
    /// `trajectories[i].states[j]` is ray `xi[i]` at `tau[j]`.
    pub trajectories: Vec<RayTrajectory>,
}

impl RayFan {
    /// Trace a fan from a launch rule over the given launch parameters.
    pub fn trace<F>(
        launch: F,
        xi: &[f64],
        medium: &MediumSpec,
        tau_max: f64,
        dtau: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> Result<RayState> + Sync,
    {
        if xi.len() < 3 {
            return Err(Error::NumericalInput("a fan needs at least 3 rays".into()));
        }
        if xi.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::NumericalInput("launch parameters must be strictly increasing".into()));
        }
        let mut trajectories: Vec<Option<RayTrajectory>> = vec![None; xi.len()];
        let mut errors: Vec<Option<String>> = vec![None; xi.len()];
        {
            let slots: Vec<(usize, f64)> = xi.iter().copied().enumerate().collect();
            let results: std::sync::Mutex<Vec<(usize, Result<RayTrajectory>)>> =
                std::sync::Mutex::new(Vec::with_capacity(xi.len()));
            let workers = parallel::worker_count(xi.len());
            let chunk = slots.len().div_ceil(workers);
            std::thread::scope(|scope| {
                for block in slots.chunks(chunk) {
                    let results = &results;
                    let launch = &launch;
                    scope.spawn(move || {
                        let mut local = Vec::with_capacity(block.len());
                        for &(idx, x) in block {
                            let traced = launch(x)
                                .and_then(|s| trace_ray(&s, medium, tau_max, dtau));
                            local.push((idx, traced));
                        }
                        results.lock().unwrap().extend(local);
                    });
                }
            });
            for (idx, res) in results.into_inner().unwrap() {
                match res {
                    Ok(t) => trajectories[idx] = Some(t),
                    Err(e) => errors[idx] = Some(e.to_string()),
                }
            }
        }
        if let Some(msg) = errors.iter().flatten().next() {
            return Err(Error::NumericalInput(format!("ray launch failed: {msg}")));
        }
        let trajectories: Vec<RayTrajectory> = trajectories.into_iter().map(|t| t.unwrap()).collect();
        let tau = trajectories[0].states.iter().map(|s| s.tau).collect();
        Ok(Self {
            xi: xi.to_vec(),
            tau,
            trajectories,
        })
    }

    pub fn n_rays(&self) -> usize {
        self.xi.len()
    }

    pub fn n_tau(&self) -> usize {
        self.tau.len()
    }

    pub fn state(&self, i: usize, j: usize) -> &RayState {
        &self.trajectories[i].states[j]
    }
}

/// Parallel vertical rays reflected once by the unit circle.
///
/// The incident pencil travels along -y; each ray crosses the interior and
/// bounces specularly off the far (inner) wall at impact angle `phi` on the
/// lower semicircle. The fan is parametrized by `phi` and launched from the
/// mirror, with `tau` the arc length after reflection and `psi` seeded with
/// the incident path length from the line y = 2.
pub fn reflected_circle_fan(
    n_rays: usize,
    phi_margin: f64,
    tau_max: f64,
    dtau: f64,
) -> Result<RayFan> {
    use std::f64::consts::PI;
    if n_rays < 3 {
        return Err(Error::NumericalInput("need at least 3 rays".into()));
    }
    if !(phi_margin > 0.0 && phi_margin < 0.5 * PI) {
        return Err(Error::NumericalInput("phi margin must lie in (0, pi/2)".into()));
    }
    let medium = MediumSpec::homogeneous(1.0, 1.0)?;
    let phi: Vec<f64> = (0..n_rays)
        .map(|k| {
            let t = k as f64 / (n_rays - 1) as f64;
            (PI + phi_margin) + t * (PI - 2.0 * phi_margin)
        })
        .collect();
    let launch = |angle: f64| -> Result<RayState> {
        let m = [angle.cos(), angle.sin()];
        let normal = m; // outward normal of the unit circle
        let d = [0.0, -1.0f64];
        let dn = d[0] * normal[0] + d[1] * normal[1];
        let reflected = [d[0] - 2.0 * dn * normal[0], d[1] - 2.0 * dn * normal[1]];
        let mut s = RayState::launch(m, reflected, &medium)?;
        s.psi = 2.0 - m[1]; // incident path length from the launch line y = 2
        Ok(s)
    };
    RayFan::trace(launch, &phi, &medium, tau_max, dtau)
}

/// Straight rays from the line y = 0 through a common focus.
pub fn converging_fan(
    xi: &[f64],
    focus: [f64; 2],
    tau_max: f64,
    dtau: f64,
) -> Result<RayFan> {
    let medium = MediumSpec::homogeneous(1.0, 1.0)?;
    let launch = |x: f64| -> Result<RayState> {
        RayState::launch([x, 0.0], [focus[0] - x, focus[1]], &medium)
    };
    RayFan::trace(launch, xi, &medium, tau_max, dtau)
}

// ---------------------------------------------------------------------------
// Derivative map, rank, and Whitney classification
// ---------------------------------------------------------------------------

/// Ratio of singular values below which the derivative map counts as
/// rank-deficient.
pub const RANK_RATIO_TOL: f64 = 1e-8;

/// Finite-difference derivative map of a plane-to-plane map.
#[derive(Debug, Clone, Copy)]
pub struct MapJacobian {
    pub matrix: [[f64; 2]; 2],
    pub det: f64,
    /// Singular values, largest first.
    pub sigma: (f64, f64),
    pub rank: u8,
}

/// Central-difference Jacobian matrix of `f` at `point` with step `step`,
/// with its rank decided by the singular-value ratio.
pub fn derivative_map<F>(f: &F, point: [f64; 2], step: f64) -> Result<MapJacobian>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::NumericalInput("derivative step must be positive".into()));
    }
    let fe = f([point[0] + step, point[1]]);
    let fw = f([point[0] - step, point[1]]);
    let fn_ = f([point[0], point[1] + step]);
    let fs = f([point[0], point[1] - step]);
    let m = [
        [
            (fe[0] - fw[0]) / (2.0 * step),
            (fn_[0] - fs[0]) / (2.0 * step),
        ],
        [
            (fe[1] - fw[1]) / (2.0 * step),
            (fn_[1] - fs[1]) / (2.0 * step),
        ],
    ];
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NumericalInput("non-finite map evaluation".into()));
    }
    Ok(jacobian_from_matrix(m))
}

pub(crate) fn jacobian_from_matrix(m: [[f64; 2]; 2]) -> MapJacobian {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let q = m.iter().flatten().map(|v| v * v).sum::<f64>();
    let s = (q * q - 4.0 * det * det).max(0.0).sqrt();
    let sigma1 = ((q + s) / 2.0).sqrt();
    let sigma2 = if sigma1 > 0.0 { det.abs() / sigma1 } else { 0.0 };
    let rank = if sigma1 == 0.0 {
        0
    } else if sigma2 / sigma1 <= RANK_RATIO_TOL {
        1
    } else {
        2
    };
    MapJacobian {
        matrix: m,
        det,
        sigma: (sigma1, sigma2),
        rank,
    }
}

/// Unit kernel direction of a rank-one 2x2 matrix (right singular vector of
/// the small singular value).
fn kernel_direction(m: &[[f64; 2]; 2]) -> [f64; 2] {
    // rows of M are orthogonal to the kernel; pick the larger row
    let r0 = [m[0][0], m[0][1]];
    let r1 = [m[1][0], m[1][1]];
    let n0 = r0[0] * r0[0] + r0[1] * r0[1];
    let n1 = r1[0] * r1[0] + r1[1] * r1[1];
    let row = if n0 >= n1 { r0 } else { r1 };
    let len = (row[0] * row[0] + row[1] * row[1]).sqrt();
    [-row[1] / len, row[0] / len]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityType {
    Fold,
    Cusp,
    Degenerate,
}

impl SingularityType {
    pub fn as_str(&self) -> &'static str {
        match self {
            SingularityType::Fold => "fold",
            SingularityType::Cusp => "cusp",
            SingularityType::Degenerate => "degenerate",
        }
    }
}

/// Steps and tolerances of the Whitney classifier.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Relative step for the Jacobian (first-derivative) stencils.
    pub jacobian_step: f64,
    /// Relative step for second-derivative stencils.
    pub second_step: f64,
    /// Relative step for third-derivative stencils; larger than the others
    /// because eps / h^3 rounding noise dominates small steps.
    pub third_step: f64,
    /// Relative tolerance deciding when a directional derivative is nonzero.
    pub tolerance: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            jacobian_step: 1e-5,
            second_step: 1e-4,
            third_step: 5e-3,
            tolerance: 1e-6,
        }
    }
}

/// Whitney fold/cusp classification of a rank-one point of `f`.
///
/// With `w` spanning `ker Df` and `n` the direction transverse to `im Df`,
/// the point is a fold when the second derivative of `n . f` along `w` is
/// nonzero; otherwise it is a cusp when the third derivative along `w` is
/// nonzero and the singular locus is a regular curve (`grad det Df != 0`);
/// anything else is reported degenerate.
pub fn classify_singularity<F>(
    f: &F,
    point: [f64; 2],
    opts: &ClassifyOptions,
) -> Result<SingularityType>
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let scale = point[0].abs().max(point[1].abs()).max(1.0);
    let jac = derivative_map(f, point, opts.jacobian_step * scale)?;
    if jac.rank != 1 {
        return Err(Error::NotRankDeficient {
            ratio: if jac.sigma.0 > 0.0 { jac.sigma.1 / jac.sigma.0 } else { 0.0 },
        });
    }
    let w = kernel_direction(&jac.matrix);
    // image direction: Df applied transverse to the kernel
    let wp = [-w[1], w[0]];
    let img = [
        jac.matrix[0][0] * wp[0] + jac.matrix[0][1] * wp[1],
        jac.matrix[1][0] * wp[0] + jac.matrix[1][1] * wp[1],
    ];
    let img_len = (img[0] * img[0] + img[1] * img[1]).sqrt();
    if img_len == 0.0 {
        return Err(Error::NotRankDeficient { ratio: 0.0 });
    }
    let normal = [-img[1] / img_len, img[0] / img_len];
    let p = |s: f64| {
        let v = f([point[0] + s * w[0], point[1] + s * w[1]]);
        v[0] * normal[0] + v[1] * normal[1]
    };

    let deriv_scale = jac.sigma.0.max(1.0);
    let tol = opts.tolerance * deriv_scale;

    let h2 = opts.second_step * scale;
    let p2 = (p(h2) - 2.0 * p(0.0) + p(-h2)) / (h2 * h2);
    if p2.abs() > tol {
        return Ok(SingularityType::Fold);
    }

    let h3 = opts.third_step * scale;
    let p3 = (p(2.0 * h3) - 2.0 * p(h3) + 2.0 * p(-h3) - p(-2.0 * h3)) / (2.0 * h3 * h3 * h3);
    if p3.abs() > tol {
        // cusp also needs the singular locus to be a regular curve
        let hd = opts.second_step * scale;
        let det_at = |q: [f64; 2]| -> Result<f64> {
            Ok(derivative_map(f, q, opts.jacobian_step * scale)?.det)
        };
        let gu = (det_at([point[0] + hd, point[1]])? - det_at([point[0] - hd, point[1]])?)
            / (2.0 * hd);
        let gv = (det_at([point[0], point[1] + hd])? - det_at([point[0], point[1] - hd])?)
            / (2.0 * hd);
        if (gu * gu + gv * gv).sqrt() > tol {
            return Ok(SingularityType::Cusp);
        }
    }
    Ok(SingularityType::Degenerate)
}

// ---------------------------------------------------------------------------
// Caustic detection on a ray fan
// ---------------------------------------------------------------------------

/// A detected rank-deficient point of the fan projection.
#[derive(Debug, Clone, Copy)]
pub struct CausticPoint {
    pub position: [f64; 2],
    pub kind: SingularityType,
    pub rank: u8,
    pub det_abs: f64,
    /// Launch parameter of the ray carrying the point.
    pub xi: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct CausticDetectOptions {
    /// |det| below this value terminates the bisection.
    pub det_tolerance: f64,
    /// Bisection width floor, as a fraction of the tau spacing.
    pub tau_width_fraction: f64,
    /// Classify each detected point through the interpolated fan map.
    pub classify: bool,
}

impl Default for CausticDetectOptions {
    fn default() -> Self {
        Self {
            det_tolerance: 1e-12,
            tau_width_fraction: 1e-6,
            classify: false,
        }
    }
}

/// Cubic Hermite interpolation of a trajectory at parameter `t`.
fn hermite_state(traj: &RayTrajectory, tau: &[f64], t: f64, medium: &MediumSpec) -> RayState {
    let j = match tau.partition_point(|&s| s <= t) {
        0 => 0,
        p => (p - 1).min(tau.len() - 2),
    };
    let (t0, t1) = (tau[j], tau[j + 1]);
    let h = t1 - t0;
    let s = ((t - t0) / h).clamp(0.0, 1.0);
    let (s2, s3) = (s * s, s * s * s);
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let a = &traj.states[j];
    let b = &traj.states[j + 1];
    let ga = medium.profile.grad_n2(a.r[0], a.r[1]);
    let gb = medium.profile.grad_n2(b.r[0], b.r[1]);
    let mut r = [0.0; 2];
    let mut p = [0.0; 2];
    for c in 0..2 {
        r[c] = h00 * a.r[c] + h10 * h * a.p[c] + h01 * b.r[c] + h11 * h * b.p[c];
        p[c] = h00 * a.p[c] + h10 * h * 0.5 * ga[c] + h01 * b.p[c] + h11 * h * 0.5 * gb[c];
    }
    let pa2 = a.p[0] * a.p[0] + a.p[1] * a.p[1];
    let pb2 = b.p[0] * b.p[0] + b.p[1] * b.p[1];
    let psi = h00 * a.psi + h10 * h * pa2 + h01 * b.psi + h11 * h * pb2;
    RayState { r, p, psi, tau: t }
}

/// Move `t` onto the zero of det Df of the interpolated fan map at fixed
/// launch parameter, by bisection over a +/- dtau bracket.
fn polish_on_interpolant<F>(map: &F, xi: f64, t0: f64, dtau: f64) -> f64
where
    F: Fn([f64; 2]) -> [f64; 2],
{
    let h = 1e-5 * xi.abs().max(t0.abs()).max(1.0);
    let det_at = |t: f64| match derivative_map(map, [xi, t], h) {
        Ok(j) => j.det,
        Err(_) => f64::NAN,
    };
    let (mut ta, mut tb) = (t0 - dtau, t0 + dtau);
    let (mut da, db) = (det_at(ta), det_at(tb));
    if !(da.is_finite() && db.is_finite()) || da * db > 0.0 {
        return t0;
    }
    let mut t_mid = t0;
    for _ in 0..50 {
        t_mid = 0.5 * (ta + tb);
        let dm = det_at(t_mid);
        if !dm.is_finite() || dm == 0.0 {
            break;
        }
        if da * dm < 0.0 {
            tb = t_mid;
        } else {
            ta = t_mid;
            da = dm;
        }
    }
    t_mid
}

/// det of the fan projection at ray `i`, parameter `t`: the xi-column by
/// central difference across neighbor rays, the tau-column from the ray's
/// own momentum.
fn fan_det(fan: &RayFan, medium: &MediumSpec, i: usize, t: f64) -> f64 {
    let prev = hermite_state(&fan.trajectories[i - 1], &fan.tau, t, medium);
    let next = hermite_state(&fan.trajectories[i + 1], &fan.tau, t, medium);
    let here = hermite_state(&fan.trajectories[i], &fan.tau, t, medium);
    let dxi = fan.xi[i + 1] - fan.xi[i - 1];
    let x_xi = (next.r[0] - prev.r[0]) / dxi;
    let y_xi = (next.r[1] - prev.r[1]) / dxi;
    x_xi * here.p[1] - y_xi * here.p[0]
}

/// Evaluate the fan map `(xi, tau) -> r` by interpolation: cubic Hermite
/// along tau, 4-point Lagrange across rays.
pub fn fan_map(fan: &RayFan, medium: &MediumSpec, xi: f64, tau: f64) -> [f64; 2] {
    let n = fan.xi.len();
    let i = match fan.xi.partition_point(|&x| x <= xi) {
        0 => 0,
        p => (p - 1).min(n - 2),
    };
    let lo = i.saturating_sub(1).min(n - 4);
    let mut out = [0.0; 2];
    for a in lo..lo + 4 {
        let mut weight = 1.0;
        for b in lo..lo + 4 {
            if a != b {
                weight *= (xi - fan.xi[b]) / (fan.xi[a] - fan.xi[b]);
            }
        }
        let s = hermite_state(&fan.trajectories[a], &fan.tau, tau, medium);
        out[0] += weight * s.r[0];
        out[1] += weight * s.r[1];
    }
    out
}

/// Scan the fan for sign changes of det Df along tau, bisect each crossing,
/// and report the merged ray points.
pub fn detect_caustic(
    fan: &RayFan,
    medium: &MediumSpec,
    opts: &CausticDetectOptions,
) -> Vec<CausticPoint> {
    let n_rays = fan.n_rays();
    let n_tau = fan.n_tau();
    if n_rays < 3 || n_tau < 2 {
        return Vec::new();
    }
    let mut points = Vec::new();
    for i in 1..n_rays - 1 {
        let mut det_prev = fan_det(fan, medium, i, fan.tau[0]);
        for j in 1..n_tau {
            let det_here = fan_det(fan, medium, i, fan.tau[j]);
            if det_prev == 0.0 || det_prev * det_here < 0.0 {
                let (mut ta, mut tb) = (fan.tau[j - 1], fan.tau[j]);
                let (mut da, _db) = (det_prev, det_here);
                let width_floor = opts.tau_width_fraction * (tb - ta);
                let mut t_mid = 0.5 * (ta + tb);
                for _ in 0..64 {
                    t_mid = 0.5 * (ta + tb);
                    let dm = fan_det(fan, medium, i, t_mid);
                    if dm.abs() <= opts.det_tolerance || (tb - ta) <= width_floor {
                        break;
                    }
                    if da * dm <= 0.0 {
                        tb = t_mid;
                    } else {
                        ta = t_mid;
                        da = dm;
                    }
                }
                let state = hermite_state(&fan.trajectories[i], &fan.tau, t_mid, medium);
                let det_final = fan_det(fan, medium, i, t_mid);
                let kind = if opts.classify {
                    // the coarse-stencil zero sits O(dxi^2) off the
                    // interpolated map's own singular set; polish on the
                    // interpolant's det before asking for the type
                    let map = |q: [f64; 2]| fan_map(fan, medium, q[0], q[1]);
                    let t_c = polish_on_interpolant(&map, fan.xi[i], t_mid, fan.tau[j] - fan.tau[j - 1]);
                    classify_singularity(&map, [fan.xi[i], t_c], &ClassifyOptions::default())
                        .unwrap_or(SingularityType::Degenerate)
                } else {
                    SingularityType::Degenerate
                };
                points.push(CausticPoint {
                    position: state.r,
                    kind,
                    rank: 1,
                    det_abs: det_final.abs(),
                    xi: fan.xi[i],
                    tau: t_mid,
                });
            }
            det_prev = det_here;
        }
    }
    points
}

// ---------------------------------------------------------------------------
// Field residuals of the eikonal/transport hierarchy
// ---------------------------------------------------------------------------

/// Pointwise residual of the eikonal equation, |grad psi|^2 - n^2.
pub fn eikonal_residual(psi: &ScalarField2D, medium: &MediumSpec) -> Result<ScalarField2D> {
    let g = gradient(psi)?;
    let grid = psi.grid();
    let mut out = Vec::with_capacity(grid.len());
    for (i, j, x, y) in grid.nodes() {
        let (gx, gy) = g.get(i, j);
        out.push(gx * gx + gy * gy - medium.profile.n2(x, y));
    }
    ScalarField2D::new(grid.clone(), out)
}

/// Pointwise residual of the leading transport equation,
/// `2 grad psi . grad U0 + (lap psi) U0`.
pub fn transport_residual(u0: &ScalarField2D, psi: &ScalarField2D) -> Result<ScalarField2D> {
    let gpsi = gradient(psi)?;
    let gu = gradient(u0)?;
    let lpsi = laplacian(psi)?;
    let advect = dot(&gpsi, &gu)?;
    let grid = u0.grid();
    let mut out = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        out.push(2.0 * advect.values()[k] + lpsi.values()[k] * u0.values()[k]);
    }
    ScalarField2D::new(grid.clone(), out)
}

/// Residual of the j-th transport equation,
/// `2 U0 grad psi . grad(U_j / U0) + lap U_{j-1}`.
pub fn higher_transport_residual(
    u0: &ScalarField2D,
    u_j: &ScalarField2D,
    u_prev: &ScalarField2D,
    psi: &ScalarField2D,
) -> Result<ScalarField2D> {
    if let Some(k) = u0.values().iter().position(|v| *v == 0.0) {
        return Err(Error::AmplitudeZero { index: k });
    }
    let ratio = u_j.zip_map(u0, |a, b| a / b)?;
    let gratio = gradient(&ratio)?;
    let gpsi = gradient(psi)?;
    let advect = dot(&gpsi, &gratio)?;
    let lap_prev = laplacian(u_prev)?;
    let grid = u0.grid();
    let mut out = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        out.push(2.0 * u0.values()[k] * advect.values()[k] + lap_prev.values()[k]);
    }
    ScalarField2D::new(grid.clone(), out)
}
