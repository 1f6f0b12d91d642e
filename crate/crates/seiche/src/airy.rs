//! The Airy equation `V''(t) + t V(t) = 0` and its canonical branch.
//!
//! Solutions oscillate for `t > 0` and split into growing/decaying pairs for
//! `t < 0`. The solver advances by Taylor steps: the equation's polynomial
//! coefficient gives a three-term recurrence for the local series, so each
//! step carries its own dense output and a directly measurable ODE residual.
//!
//! The branch used by the caustic boundary layer is `V(t) = Ai(-t)`, which
//! decays for `t < 0` (the shadow side). Building it by forward integration
//! from 0 is hopeless far into the shadow - rounding injects the growing
//! companion solution - so the branch is anchored deep on the decaying side
//! with its asymptotic expansion and integrated in the stable (growing)
//! direction.

use crate::error::{Error, Result};

/// Ai(0) = 3^(-2/3) / Gamma(2/3).
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// Ai'(0) = -3^(-1/3) / Gamma(1/3).
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;

const STEP: f64 = 0.25;
const ORDER: usize = 30;

/// Taylor coefficients of the solution around `a` with data (v, vp):
/// c[n+2] = -(a c[n] + c[n-1]) / ((n+1)(n+2)).
fn taylor_coeffs(a: f64, v: f64, vp: f64) -> [f64; ORDER] {
    let mut c = [0.0; ORDER];
    c[0] = v;
    c[1] = vp;
    for n in 0..ORDER - 2 {
        let prev = if n == 0 { 0.0 } else { c[n - 1] };
        c[n + 2] = -(a * c[n] + prev) / (((n + 1) * (n + 2)) as f64);
    }
    c
}

fn eval_series(c: &[f64; ORDER], s: f64) -> (f64, f64, f64) {
    let mut v = 0.0;
    let mut vp = 0.0;
    let mut vpp = 0.0;
    for n in (0..ORDER).rev() {
        v = v * s + c[n];
        if n >= 1 {
            vp = vp * s + c[n] * n as f64;
        }
        if n >= 2 {
            vpp = vpp * s + c[n] * (n * (n - 1)) as f64;
        }
    }
    (v, vp, vpp)
}

/// A solution of the Airy equation with dense output on `[t_min, t_max]`.
#[derive(Debug, Clone)]
pub struct AirySolution {
    t_min: f64,
    t_max: f64,
    /// Node times (uniformly spaced except possibly the ends).
    nodes: Vec<f64>,
    /// (V, V') at each node.
    data: Vec<(f64, f64)>,
    /// Max |V'' + t V| observed on the construction check grid.
    residual: f64,
}

impl AirySolution {
    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Max ODE residual measured on the 1000-point check grid.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    fn nearest_node(&self, t: f64) -> usize {
        let k = self
            .nodes
            .partition_point(|&s| s < t)
            .min(self.nodes.len() - 1);
        if k > 0 && (t - self.nodes[k - 1]).abs() <= (self.nodes[k] - t).abs() {
            k - 1
        } else {
            k
        }
    }

    /// V and V' at `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let (v, vp, _) = self.eval_with_second(t)?;
        Ok((v, vp))
    }

    pub fn v(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t)?.0)
    }

    /// V, V', V'' at `t` (V'' from the local series, not from the identity).
    pub fn eval_with_second(&self, t: f64) -> Result<(f64, f64, f64)> {
        if t < self.t_min - 1e-12 || t > self.t_max + 1e-12 {
            return Err(Error::AiryRangeExceeded {
                t,
                t_min: self.t_min,
                t_max: self.t_max,
            });
        }
        let k = self.nearest_node(t);
        let a = self.nodes[k];
        let (v, vp) = self.data[k];
        let c = taylor_coeffs(a, v, vp);
        Ok(eval_series(&c, t - a))
    }

    /// ODE residual |V'' + t V| at `t`.
    pub fn ode_residual(&self, t: f64) -> Result<f64> {
        let (v, _, vpp) = self.eval_with_second(t)?;
        Ok((vpp + t * v).abs())
    }

    /// The canonical caustic branch V(t) = Ai(-t) on `[t_min, t_max]`:
    /// oscillatory for t > 0 (illuminated side), exponentially decaying for
    /// t < 0 (shadow side).
    pub fn ai_branch(t_min: f64, t_max: f64) -> Result<Self> {
        if !(t_min < t_max) || !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::NumericalInput("bad Airy interval".into()));
        }
        if t_min < -120.0 {
            // exp(-2/3 |t|^{3/2}) underflows f64 far beyond this
            return Err(Error::AiryRangeExceeded {
                t: t_min,
                t_min: -120.0,
                t_max: f64::INFINITY,
            });
        }
        let (anchor_t, v0, vp0) = if t_min >= 0.0 {
            (0.0, AI_ZERO, -AI_PRIME_ZERO)
        } else {
            // anchor on the decaying side: V(t) = Ai(x), V'(t) = -Ai'(x) at x = -t
            let x = (-t_min).max(12.0);
            let (ai, aip) = ai_asymptotic_positive(x);
            (-x, ai, -aip)
        };
        build_solution(anchor_t.min(t_min), t_max, anchor_t, v0, vp0)
    }
}

/// Integrate the Airy equation from data `(v0, vp0)` at `t0`, producing
/// dense output on `[t_min, t_max]`; the ODE residual is checked on a
/// 1000-point grid.
pub fn airy_solve(t_min: f64, t_max: f64, t0: f64, v0: f64, vp0: f64) -> Result<AirySolution> {
    if !(t_min < t_max) || !(t0 >= t_min && t0 <= t_max) {
        return Err(Error::NumericalInput(format!(
            "need t_min < t_max and t0 inside, got [{t_min}, {t_max}], t0 = {t0}"
        )));
    }
    if !(v0.is_finite() && vp0.is_finite()) {
        return Err(Error::NumericalInput("non-finite Airy initial data".into()));
    }
    build_solution(t_min, t_max, t0, v0, vp0)
}

fn build_solution(t_min: f64, t_max: f64, t0: f64, v0: f64, vp0: f64) -> Result<AirySolution> {
    // march up and down from the anchor on a uniform lattice
    let mut nodes = vec![t0];
    let mut data = vec![(v0, vp0)];
    let mut t = t0;
    let mut state = (v0, vp0);
    while t < t_max {
        let h = STEP.min(t_max - t);
        let c = taylor_coeffs(t, state.0, state.1);
        let (v, vp, _) = eval_series(&c, h);
        t += h;
        state = (v, vp);
        nodes.push(t);
        data.push(state);
    }
    t = t0;
    state = (v0, vp0);
    let mut front_nodes = Vec::new();
    let mut front_data = Vec::new();
    while t > t_min {
        let h = STEP.min(t - t_min);
        let c = taylor_coeffs(t, state.0, state.1);
        let (v, vp, _) = eval_series(&c, -h);
        t -= h;
        state = (v, vp);
        front_nodes.push(t);
        front_data.push(state);
    }
    front_nodes.reverse();
    front_data.reverse();
    front_nodes.extend(nodes);
    front_data.extend(data);

    let mut solution = AirySolution {
        t_min,
        t_max,
        nodes: front_nodes,
        data: front_data,
        residual: 0.0,
    };
    let mut worst = 0.0f64;
    let scale = solution
        .data
        .iter()
        .fold(0.0f64, |m, (v, _)| m.max(v.abs()))
        .max(1.0);
    for k in 0..1000 {
        let t = t_min + (t_max - t_min) * k as f64 / 999.0;
        worst = worst.max(solution.ode_residual(t)?);
    }
    solution.residual = worst;
    if worst > 1e-10 * scale {
        return Err(Error::NumericalInput(format!(
            "Airy interval too large: residual {worst:e} exceeds tolerance"
        )));
    }
    Ok(solution)
}

/// Asymptotic Ai(x) and Ai'(x) for large positive x (x >= ~10).
fn ai_asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut u = 1.0;
    let mut sum_u = 1.0;
    let mut sum_v = 1.0;
    let mut sign = 1.0;
    let mut term_prev = f64::INFINITY;
    for k in 1i32..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        sign = -sign;
        let zk = zeta.powi(k);
        let term_u = sign * u / zk;
        if term_u.abs() >= term_prev {
            break; // asymptotic series started diverging
        }
        sum_u += term_u;
        sum_v += sign * v / zk;
        term_prev = term_u.abs();
        if term_u.abs() < 1e-18 {
            break;
        }
    }
    let pref = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let ai = pref * x.powf(-0.25) * sum_u;
    let aip = -pref * x.powf(0.25) * sum_v;
    (ai, aip)
}
