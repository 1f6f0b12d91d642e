//! Shallow-water characteristics for a tidal channel.
//!
//! In the constant-depth regime a disturbance launched at the channel mouth
//! propagates along straight characteristic lines; the line emitted while the
//! piston (incoming tide) moves at speed `u_A` travels at
//! `(3/2) u_A + c0`. When `u_A` increases with time, later lines overtake
//! earlier ones and the family develops an envelope: the onset of a bore.

use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;

/// Local shallow-water state.
#[derive(Debug, Clone, Copy)]
pub struct ShallowState {
    /// Horizontal velocity.
    pub u: f64,
    /// Local propagation speed c = sqrt(g (eta + h)).
    pub c: f64,
    /// Floor slope dh/dx.
    pub m: f64,
    /// Time.
    pub t: f64,
    /// Gravitational acceleration.
    pub g: f64,
}

impl ShallowState {
    pub fn new(u: f64, c: f64, m: f64, t: f64, g: f64) -> Result<Self> {
        if !(u.is_finite() && c.is_finite() && m.is_finite() && t.is_finite() && g.is_finite()) {
            return Err(Error::NumericalInput("non-finite shallow state".into()));
        }
        if c < 0.0 {
            return Err(Error::NumericalInput(format!("propagation speed c = {c} < 0")));
        }
        if g <= 0.0 {
            return Err(Error::NumericalInput(format!("gravity g = {g} <= 0")));
        }
        Ok(Self { u, c, m, t, g })
    }
}

/// Characteristic family: lines moving at u + c or u - c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Plus,
    Minus,
}

/// The pair of Riemann invariants (xi, sigma) = (u - 2c - mt, u + 2c - mt).
pub fn riemann_invariants(s: &ShallowState) -> (f64, f64) {
    let base = s.u - s.m * s.t;
    (base - 2.0 * s.c, base + 2.0 * s.c)
}

/// Signal speed of the chosen characteristic family, u +/- c.
pub fn characteristic_speed(s: &ShallowState, family: Family) -> f64 {
    match family {
        Family::Plus => s.u + s.c,
        Family::Minus => s.u - s.c,
    }
}

/// A straight characteristic line x(t) = x0 + v (t - t0).
#[derive(Debug, Clone, Copy)]
pub struct CharacteristicLine {
    /// Emission time.
    pub t0: f64,
    /// Emission position (piston position at t0).
    pub x0: f64,
    /// Constant signal speed along the line.
    pub v: f64,
    /// Riemann invariant u + 2c carried by the line.
    pub invariant: f64,
}

impl CharacteristicLine {
    pub fn position(&self, t: f64) -> f64 {
        self.x0 + self.v * (t - self.t0)
    }

    /// Shallow state carried along the line (constant u and c, flat floor).
    pub fn state_at(&self, t: f64, g: f64) -> Result<ShallowState> {
        // invariant = u + 2c and v = u + c  =>  c = invariant - v, u = 2v - invariant
        let c = self.invariant - self.v;
        let u = 2.0 * self.v - self.invariant;
        ShallowState::new(u, c, 0.0, t, g)
    }
}

/// Velocity record of the incoming tide at the channel mouth.
#[derive(Debug, Clone)]
pub enum PistonMotion {
    /// u_A(t) = a t for t >= 0.
    Linear { a: f64 },
    /// Piecewise-linear record over strictly increasing times.
    Table { times: Vec<f64>, velocities: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct PistonPath {
    pub motion: PistonMotion,
    /// Undisturbed propagation speed c0 = sqrt(g h).
    pub c0: f64,
}

impl PistonPath {
    pub fn new(motion: PistonMotion, c0: f64) -> Result<Self> {
        if !(c0.is_finite() && c0 > 0.0) {
            return Err(Error::NumericalInput(format!("c0 = {c0} must be positive")));
        }
        if let PistonMotion::Table { times, velocities } = &motion {
            if times.len() < 2 || times.len() != velocities.len() {
                return Err(Error::NumericalInput(
                    "piston table needs matching times and velocities, at least 2 samples".into(),
                ));
            }
            if times.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::NumericalInput(
                    "piston table times must be strictly increasing".into(),
                ));
            }
            if times
                .iter()
                .chain(velocities.iter())
                .any(|v| !v.is_finite())
            {
                return Err(Error::NumericalInput("non-finite piston table entry".into()));
            }
        }
        Ok(Self { motion, c0 })
    }

    pub fn domain(&self) -> (f64, f64) {
        match &self.motion {
            PistonMotion::Linear { .. } => (0.0, f64::INFINITY),
            PistonMotion::Table { times, .. } => (times[0], *times.last().unwrap()),
        }
    }

    /// Incoming-tide velocity u_A(t).
    pub fn velocity(&self, t: f64) -> Result<f64> {
        let (t_min, t_max) = self.domain();
        if t < t_min || t > t_max {
            return Err(Error::EmissionOutsideDomain { t, t_min, t_max });
        }
        Ok(match &self.motion {
            PistonMotion::Linear { a } => a * t,
            PistonMotion::Table { times, velocities } => {
                let k = match times.partition_point(|&s| s <= t) {
                    0 => 0,
                    p => (p - 1).min(times.len() - 2),
                };
                let w = (t - times[k]) / (times[k + 1] - times[k]);
                velocities[k] * (1.0 - w) + velocities[k + 1] * w
            }
        })
    }

    /// Piston position at `t`, integrating u_A from the start of the record.
    pub fn position(&self, t: f64) -> Result<f64> {
        let (t_min, t_max) = self.domain();
        if t < t_min || t > t_max {
            return Err(Error::EmissionOutsideDomain { t, t_min, t_max });
        }
        let start = if t_min.is_finite() { t_min.max(0.0) } else { 0.0 };
        let f = |s: f64| self.velocity(s).unwrap_or(0.0);
        Ok(adaptive_simpson(&f, start, t, 1e-10))
    }
}

/// Emit one straight characteristic per emission time.
///
/// Line speed is `(3/2) u_A(t0) + c0`; emission position is the piston
/// position at `t0` obtained by quadrature.
pub fn emit_characteristics(
    path: &PistonPath,
    emission_times: &[f64],
) -> Result<Vec<CharacteristicLine>> {
    if emission_times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::NumericalInput(
            "emission times must be strictly increasing".into(),
        ));
    }
    emission_times
        .iter()
        .map(|&t0| {
            let ua = path.velocity(t0)?;
            let x0 = path.position(t0)?;
            // behind the front, c = c0 + u/2 from the undisturbed minus-family
            // invariant, so the carried plus-family invariant is u + 2c.
            let c = path.c0 + 0.5 * ua;
            Ok(CharacteristicLine {
                t0,
                x0,
                v: 1.5 * ua + path.c0,
                invariant: ua + 2.0 * c,
            })
        })
        .collect()
}

/// Intersection of two characteristic lines, if it happens after both
/// emissions. Returns `(t, x)`.
fn pair_intersection(a: &CharacteristicLine, b: &CharacteristicLine) -> Option<(f64, f64)> {
    let dv = a.v - b.v;
    if dv == 0.0 {
        return None;
    }
    // x0a + va (t - t0a) = x0b + vb (t - t0b)
    let t = (b.x0 - b.v * b.t0 - a.x0 + a.v * a.t0) / dv;
    if !t.is_finite() || t < a.t0.max(b.t0) {
        return None;
    }
    Some((t, a.position(t)))
}

/// Earliest intersection among adjacent lines of the (sorted) fan.
///
/// Adjacent characteristics intersect first for a monotone piston record;
/// the all-pairs search is kept in the test suite as an oracle.
pub fn first_focusing_time(lines: &[CharacteristicLine]) -> Option<(f64, f64)> {
    if lines.len() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&p, &q| {
        (lines[p].t0, lines[p].x0)
            .partial_cmp(&(lines[q].t0, lines[q].x0))
            .unwrap()
    });
    let mut best: Option<(f64, f64)> = None;
    for w in order.windows(2) {
        if let Some((t, x)) = pair_intersection(&lines[w[0]], &lines[w[1]]) {
            if best.map_or(true, |(tb, _)| t < tb) {
                best = Some((t, x));
            }
        }
    }
    best
}

/// Brute-force all-pairs variant. Exposed for oracles and cross-checks.
pub fn first_focusing_time_all_pairs(lines: &[CharacteristicLine]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for (k, a) in lines.iter().enumerate() {
        for b in lines.iter().skip(k + 1) {
            if let Some((t, x)) = pair_intersection(a, b) {
                if best.map_or(true, |(tb, _)| t < tb) {
                    best = Some((t, x));
                }
            }
        }
    }
    best
}
