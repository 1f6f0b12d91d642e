//! Phase singularities of complex scalar waves.
//!
//! A wave `alpha exp(i chi)` has a well-defined phase wherever the amplitude
//! is nonzero; at amplitude zeros the phase is indeterminate and the wave
//! carries a dislocation. Around any closed loop avoiding dislocations the
//! phase change is an exact multiple of 2 pi (wrapped steps telescope), so
//! dislocations carry integer topological charge. For the tides these are
//! the amphidromic points: cotidal lines (constant-phase contours) radiate
//! from them and the tidal current `j = alpha^2 grad chi` circulates around
//! them.

use crate::curve::ParametricCurve;
use crate::error::{Error, Result};
use crate::field::{ComplexField2D, ScalarField2D, VectorField2D};
use crate::grid::Grid2D;
use crate::numeric::winding_aware_phase_difference as wrap;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Default amplitude threshold, relative to max amplitude, below which the
/// phase counts as indeterminate.
pub const ALPHA_THRESHOLD_REL: f64 = 1e-12;
/// Maximum tolerated distance of a loop's raw winding from an integer.
pub const WINDING_GUARD: f64 = 0.05;

/// Amplitude/phase split of a complex field.
#[derive(Debug, Clone)]
pub struct WaveDecomposition {
    amplitude: ScalarField2D,
    phase: ScalarField2D,
    indeterminate: Vec<bool>,
    threshold: f64,
}

impl WaveDecomposition {
    pub fn amplitude(&self) -> &ScalarField2D {
        &self.amplitude
    }

    pub fn phase(&self) -> &ScalarField2D {
        &self.phase
    }

    pub fn grid(&self) -> &Grid2D {
        self.amplitude.grid()
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn is_indeterminate(&self, i: usize, j: usize) -> bool {
        self.indeterminate[self.grid().idx(i, j)]
    }
}

/// Split a complex field into amplitude and phase. The phase lies in
/// (-pi, pi] and is flagged indeterminate where the amplitude does not
/// exceed `alpha_threshold` (default: 1e-12 of the max amplitude).
pub fn decompose(field: &ComplexField2D, alpha_threshold: Option<f64>) -> Result<WaveDecomposition> {
    let grid = field.grid().clone();
    let max_amp = field.values().iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let threshold = alpha_threshold.unwrap_or(ALPHA_THRESHOLD_REL * max_amp);
    let mut amp = Vec::with_capacity(grid.len());
    let mut phase = Vec::with_capacity(grid.len());
    let mut indet = Vec::with_capacity(grid.len());
    for z in field.values() {
        let a = z.norm();
        let mut chi = z.im.atan2(z.re);
        if chi <= -PI {
            chi = PI;
        }
        amp.push(a);
        phase.push(chi);
        indet.push(a <= threshold);
    }
    Ok(WaveDecomposition {
        amplitude: ScalarField2D::new(grid.clone(), amp)?,
        phase: ScalarField2D::new(grid, phase)?,
        indeterminate: indet,
        threshold,
    })
}

/// Winding-aware gradient of the phase (unwrapping per stencil leg).
fn phase_gradient(dec: &WaveDecomposition) -> Result<VectorField2D> {
    let grid = dec.grid();
    if grid.nx < 3 || grid.ny < 3 {
        return Err(Error::NumericalInput("phase gradient needs 3 nodes per axis".into()));
    }
    let chi = dec.phase.values();
    let (nx, ny) = (grid.nx, grid.ny);
    let (hx, hy) = (grid.hx(), grid.hy());
    let mut gx = vec![0.0; grid.len()];
    let mut gy = vec![0.0; grid.len()];
    let line = |k0: usize, k1: usize, k2: usize, edge: bool, h: f64, flip: f64| -> f64 {
        if edge {
            // one-sided: (-3 chi0 + 4 chi1 - chi2) / 2h = (3 d01 - d12) / 2h
            let d01 = wrap(chi[k0], chi[k1]);
            let d12 = wrap(chi[k1], chi[k2]);
            flip * (3.0 * d01 - d12) / (2.0 * h)
        } else {
            // central through k1: (d(k1->k2) + d(k0->k1)) / 2h
            let d = wrap(chi[k0], chi[k1]) + wrap(chi[k1], chi[k2]);
            d / (2.0 * h)
        }
    };
    for j in 0..ny {
        for i in 0..nx {
            let k = grid.idx(i, j);
            gx[k] = if i == 0 {
                line(grid.idx(0, j), grid.idx(1, j), grid.idx(2, j), true, hx, 1.0)
            } else if i == nx - 1 {
                line(grid.idx(nx - 1, j), grid.idx(nx - 2, j), grid.idx(nx - 3, j), true, hx, -1.0)
            } else {
                line(grid.idx(i - 1, j), grid.idx(i, j), grid.idx(i + 1, j), false, hx, 1.0)
            };
            gy[k] = if j == 0 {
                line(grid.idx(i, 0), grid.idx(i, 1), grid.idx(i, 2), true, hy, 1.0)
            } else if j == ny - 1 {
                line(grid.idx(i, ny - 1), grid.idx(i, ny - 2), grid.idx(i, ny - 3), true, hy, -1.0)
            } else {
                line(grid.idx(i, j - 1), grid.idx(i, j), grid.idx(i, j + 1), false, hy, 1.0)
            };
        }
    }
    VectorField2D::new(grid.clone(), gx, gy)
}

/// The current `j = alpha^2 grad chi`, zero where the phase is indeterminate.
pub fn current(dec: &WaveDecomposition) -> Result<VectorField2D> {
    let grad = phase_gradient(dec)?;
    let grid = dec.grid();
    let mut u = Vec::with_capacity(grid.len());
    let mut v = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        if dec.indeterminate[k] {
            u.push(0.0);
            v.push(0.0);
        } else {
            let a2 = dec.amplitude.values()[k] * dec.amplitude.values()[k];
            u.push(a2 * grad.u()[k]);
            v.push(a2 * grad.v()[k]);
        }
    }
    VectorField2D::new(grid.clone(), u, v)
}

/// Topological charge of a closed loop of grid nodes (implicitly closed:
/// the last node connects back to the first).
pub fn winding_number(dec: &WaveDecomposition, loop_nodes: &[(usize, usize)]) -> Result<i32> {
    if loop_nodes.len() < 3 {
        return Err(Error::NumericalInput("a loop needs at least 3 nodes".into()));
    }
    for &(i, j) in loop_nodes {
        if dec.is_indeterminate(i, j) {
            return Err(Error::LoopTouchesIndeterminate { i, j });
        }
    }
    let chi = dec.phase.values();
    let grid = dec.grid();
    let mut total = 0.0;
    for w in 0..loop_nodes.len() {
        let (i0, j0) = loop_nodes[w];
        let (i1, j1) = loop_nodes[(w + 1) % loop_nodes.len()];
        total += wrap(chi[grid.idx(i0, j0)], chi[grid.idx(i1, j1)]);
    }
    let raw = total / TAU;
    let nearest = raw.round();
    let deviation = (raw - nearest).abs();
    if deviation > WINDING_GUARD {
        return Err(Error::WindingNotQuantized {
            raw,
            deviation,
            guard: WINDING_GUARD,
        });
    }
    Ok(nearest as i32)
}

/// Raw (pre-rounded) winding of a loop in turns, for diagnostics.
pub fn winding_raw(dec: &WaveDecomposition, loop_nodes: &[(usize, usize)]) -> Result<f64> {
    for &(i, j) in loop_nodes {
        if dec.is_indeterminate(i, j) {
            return Err(Error::LoopTouchesIndeterminate { i, j });
        }
    }
    let chi = dec.phase.values();
    let grid = dec.grid();
    let mut total = 0.0;
    for w in 0..loop_nodes.len() {
        let (i0, j0) = loop_nodes[w];
        let (i1, j1) = loop_nodes[(w + 1) % loop_nodes.len()];
        total += wrap(chi[grid.idx(i0, j0)], chi[grid.idx(i1, j1)]);
    }
    Ok(total / TAU)
}

/// Winding of the elementary plaquette with lower-left node (i, j),
/// in integer turns (the raw sum is an exact multiple of 2 pi).
pub fn plaquette_winding(dec: &WaveDecomposition, i: usize, j: usize) -> i32 {
    let chi = dec.phase.values();
    let g = dec.grid();
    let a = chi[g.idx(i, j)];
    let b = chi[g.idx(i + 1, j)];
    let c = chi[g.idx(i + 1, j + 1)];
    let d = chi[g.idx(i, j + 1)];
    let total = wrap(a, b) + wrap(b, c) + wrap(c, d) + wrap(d, a);
    (total / TAU).round() as i32
}

/// True when any corner of the plaquette carries indeterminate phase
/// (the winding there is meaningless).
fn plaquette_blocked(dec: &WaveDecomposition, i: usize, j: usize) -> bool {
    dec.is_indeterminate(i, j)
        || dec.is_indeterminate(i + 1, j)
        || dec.is_indeterminate(i + 1, j + 1)
        || dec.is_indeterminate(i, j + 1)
}

/// A detected phase dislocation.
#[derive(Debug, Clone, Copy)]
pub struct AmphidromicPoint {
    pub position: [f64; 2],
    /// Signed topological charge (counterclockwise positive).
    pub charge: i32,
    /// Amplitude at the reported node (a local minimum).
    pub amplitude: f64,
    /// Grid node of the amplitude minimum.
    pub node: (usize, usize),
}

/// Locate dislocations.
///
/// Plaquettes are flagged when they carry nonzero winding or when a corner
/// phase is indeterminate (a core sitting on a node makes its neighborhood
/// winding ambiguous). Flagged cells merge into 8-connected components; each
/// component's charge is read off a surrounding node loop - the boundary
/// winding is the sum of the enclosed plaquette charges - and the point is
/// reported at the component's amplitude-minimum node.
pub fn detect_amphidromic(dec: &WaveDecomposition) -> Vec<AmphidromicPoint> {
    let g = dec.grid().clone();
    let (cx, cy) = (g.nx - 1, g.ny - 1);
    let mut flagged = vec![false; cx * cy];
    let mut any = false;
    for j in 0..cy {
        for i in 0..cx {
            let f = plaquette_blocked(dec, i, j) || plaquette_winding(dec, i, j) != 0;
            flagged[j * cx + i] = f;
            any |= f;
        }
    }
    if !any {
        return Vec::new();
    }
    let mut visited = vec![false; cx * cy];
    let mut points = Vec::new();
    for j0 in 0..cy {
        for i0 in 0..cx {
            if !flagged[j0 * cx + i0] || visited[j0 * cx + i0] {
                continue;
            }
            let mut stack = vec![(i0, j0)];
            visited[j0 * cx + i0] = true;
            let mut cells = Vec::new();
            while let Some((i, j)) = stack.pop() {
                cells.push((i, j));
                for dj in -1i64..=1 {
                    for di in -1i64..=1 {
                        let (ni, nj) = (i as i64 + di, j as i64 + dj);
                        if ni < 0 || nj < 0 || ni >= cx as i64 || nj >= cy as i64 {
                            continue;
                        }
                        let (ni, nj) = (ni as usize, nj as usize);
                        if !visited[nj * cx + ni] && flagged[nj * cx + ni] {
                            visited[nj * cx + ni] = true;
                            stack.push((ni, nj));
                        }
                    }
                }
            }
            let Some(charge) = component_charge(dec, &cells) else {
                continue;
            };
            if charge == 0 {
                continue;
            }
            // amplitude minimum over the component's corner nodes
            let mut best = (f64::INFINITY, (0usize, 0usize));
            for &(i, j) in &cells {
                for (ci, cj) in [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)] {
                    let a = dec.amplitude.get(ci, cj);
                    if a < best.0 {
                        best = (a, (ci, cj));
                    }
                }
            }
            let (amp, (ni, nj)) = best;
            points.push(AmphidromicPoint {
                position: [g.x(ni), g.y(nj)],
                charge,
                amplitude: amp,
                node: (ni, nj),
            });
        }
    }
    points.sort_by(|a, b| {
        (a.position[1], a.position[0])
            .partial_cmp(&(b.position[1], b.position[0]))
            .unwrap()
    });
    points
}

/// Charge enclosed by a cell component: winding of a node loop around its
/// bounding box, inflated until every loop node has determinate phase.
fn component_charge(dec: &WaveDecomposition, cells: &[(usize, usize)]) -> Option<i32> {
    let g = dec.grid();
    let (mut i_min, mut i_max, mut j_min, mut j_max) = (usize::MAX, 0usize, usize::MAX, 0usize);
    for &(i, j) in cells {
        i_min = i_min.min(i);
        i_max = i_max.max(i + 1);
        j_min = j_min.min(j);
        j_max = j_max.max(j + 1);
    }
    for inflate in 1..=3usize {
        let i0 = i_min.saturating_sub(inflate);
        let j0 = j_min.saturating_sub(inflate);
        let i1 = (i_max + inflate).min(g.nx - 1);
        let j1 = (j_max + inflate).min(g.ny - 1);
        if i0 >= i1 || j0 >= j1 {
            return None;
        }
        let mut loop_nodes = Vec::new();
        for i in i0..i1 {
            loop_nodes.push((i, j0));
        }
        for j in j0..j1 {
            loop_nodes.push((i1, j));
        }
        for i in (i0 + 1..=i1).rev() {
            loop_nodes.push((i, j1));
        }
        for j in (j0 + 1..=j1).rev() {
            loop_nodes.push((i0, j));
        }
        match winding_number(dec, &loop_nodes) {
            Ok(w) => return Some(w),
            Err(Error::LoopTouchesIndeterminate { .. }) => continue,
            Err(_) => return None,
        }
    }
    None
}

/// One cotidal line: a constant-phase contour.
#[derive(Debug, Clone)]
pub struct CotidalCurve {
    pub phase: f64,
    pub curve: ParametricCurve,
}

/// Result of contouring the phase field.
#[derive(Debug, Clone)]
pub struct CotidalChart {
    pub curves: Vec<CotidalCurve>,
    /// Requested phases whose level set degenerates (constant-phase field).
    pub degenerate_phases: Vec<f64>,
}

/// Marching-squares level curves of the phase at each requested level.
///
/// Crossings are detected on the wrapped difference to the level, so the
/// contour follows the phase around the branch cut. Cells carrying nonzero
/// plaquette winding are excluded: curves terminate at dislocations (and at
/// the grid boundary).
pub fn cotidal_lines(dec: &WaveDecomposition, phases: &[f64]) -> Result<CotidalChart> {
    for &phi in phases {
        if !(phi > -PI - 1e-12 && phi <= PI + 1e-12) {
            return Err(Error::NumericalInput(format!(
                "requested phase {phi} outside (-pi, pi]"
            )));
        }
    }
    let g = dec.grid().clone();
    let chi = dec.phase.values();
    let (cx, cy) = (g.nx - 1, g.ny - 1);
    let mut vortex_cell = vec![false; cx * cy];
    for j in 0..cy {
        for i in 0..cx {
            vortex_cell[j * cx + i] =
                plaquette_blocked(dec, i, j) || plaquette_winding(dec, i, j) != 0;
        }
    }
    let mut chart = CotidalChart {
        curves: Vec::new(),
        degenerate_phases: Vec::new(),
    };
    for &phi in phases {
        // relative phase at nodes, with exact zeros nudged to the + side
        let rel: Vec<f64> = chi
            .iter()
            .map(|&c| {
                let d = wrap(phi, c);
                if d == 0.0 {
                    f64::MIN_POSITIVE
                } else {
                    d
                }
            })
            .collect();
        // a level set covering most of the grid means the phase is constant
        let near_level = rel.iter().filter(|d| d.abs() < 1e-12).count();
        if near_level * 2 > g.len() {
            chart.degenerate_phases.push(phi);
            continue;
        }

        // crossing on an edge (a, b): sign change without spanning the cut
        let crossing = |ka: usize, kb: usize| -> Option<f64> {
            let (da, db) = (rel[ka], rel[kb]);
            if da * db < 0.0 && da.abs() + db.abs() < PI {
                Some(da / (da - db))
            } else {
                None
            }
        };

        // edge ids: horizontal edge (i, j) joins (i,j)-(i+1,j); vertical
        // edge (i, j) joins (i,j)-(i,j+1)
        use std::collections::HashMap;
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum EdgeId {
            H(usize, usize),
            V(usize, usize),
        }
        let edge_point = |e: EdgeId| -> [f64; 2] {
            match e {
                EdgeId::H(i, j) => {
                    let t = crossing(g.idx(i, j), g.idx(i + 1, j)).unwrap_or(0.5);
                    [g.x(i) + t * g.hx(), g.y(j)]
                }
                EdgeId::V(i, j) => {
                    let t = crossing(g.idx(i, j), g.idx(i, j + 1)).unwrap_or(0.5);
                    [g.x(i), g.y(j) + t * g.hy()]
                }
            }
        };

        // collect segments cell by cell
        let mut adjacency: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
        for j in 0..cy {
            for i in 0..cx {
                if vortex_cell[j * cx + i] {
                    continue;
                }
                let mut hits = Vec::new();
                if crossing(g.idx(i, j), g.idx(i + 1, j)).is_some() {
                    hits.push(EdgeId::H(i, j));
                }
                if crossing(g.idx(i, j + 1), g.idx(i + 1, j + 1)).is_some() {
                    hits.push(EdgeId::H(i, j + 1));
                }
                if crossing(g.idx(i, j), g.idx(i, j + 1)).is_some() {
                    hits.push(EdgeId::V(i, j));
                }
                if crossing(g.idx(i + 1, j), g.idx(i + 1, j + 1)).is_some() {
                    hits.push(EdgeId::V(i + 1, j));
                }
                match hits.len() {
                    2 => {
                        adjacency.entry(hits[0]).or_default().push(hits[1]);
                        adjacency.entry(hits[1]).or_default().push(hits[0]);
                    }
                    4 => {
                        // saddle cell: pair edges by proximity of crossing points
                        let p: Vec<[f64; 2]> = hits.iter().map(|&e| edge_point(e)).collect();
                        let d = |a: [f64; 2], b: [f64; 2]| {
                            (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)
                        };
                        let (a, b) = if d(p[0], p[2]) + d(p[1], p[3])
                            <= d(p[0], p[3]) + d(p[1], p[2])
                        {
                            ((hits[0], hits[2]), (hits[1], hits[3]))
                        } else {
                            ((hits[0], hits[3]), (hits[1], hits[2]))
                        };
                        for (u, v) in [a, b] {
                            adjacency.entry(u).or_default().push(v);
                            adjacency.entry(v).or_default().push(u);
                        }
                    }
                    _ => {}
                }
            }
        }

        // walk chains
        let mut visited: std::collections::HashSet<EdgeId> = Default::default();
        let mut starts: Vec<EdgeId> = adjacency
            .iter()
            .filter(|(_, n)| n.len() == 1)
            .map(|(e, _)| *e)
            .collect();
        starts.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        let mut all_edges: Vec<EdgeId> = adjacency.keys().copied().collect();
        all_edges.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        for seed in starts.into_iter().chain(all_edges) {
            if visited.contains(&seed) {
                continue;
            }
            let mut chain = vec![seed];
            visited.insert(seed);
            let mut cursor = seed;
            loop {
                let next = adjacency[&cursor]
                    .iter()
                    .find(|e| !visited.contains(*e))
                    .copied();
                match next {
                    Some(e) => {
                        visited.insert(e);
                        chain.push(e);
                        cursor = e;
                    }
                    None => break,
                }
            }
            if chain.len() < 3 {
                continue;
            }
            let samples: Vec<(f64, [f64; 2])> = chain
                .iter()
                .enumerate()
                .map(|(k, &e)| (k as f64, edge_point(e)))
                .collect();
            chart.curves.push(CotidalCurve {
                phase: phi,
                curve: ParametricCurve::new(samples)?,
            });
        }
    }
    Ok(chart)
}

/// Vertically oscillating standing wave `(2a cos wt) sin kx`.
#[derive(Debug, Clone, Copy)]
pub struct StandingWaveModel {
    pub amplitude: f64,
    pub omega: f64,
    pub wave_number: f64,
}

impl StandingWaveModel {
    pub fn new(amplitude: f64, omega: f64, wave_number: f64) -> Result<Self> {
        if !(amplitude > 0.0 && omega > 0.0 && wave_number > 0.0) {
            return Err(Error::NumericalInput(
                "standing wave needs positive a, omega, k".into(),
            ));
        }
        Ok(Self { amplitude, omega, wave_number })
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        2.0 * self.amplitude * (self.omega * t).cos() * (self.wave_number * x).sin()
    }
}

/// Nodal points of the standing wave: x = n pi / k within `[a, b]`.
pub fn standing_wave_nodes(model: &StandingWaveModel, x_range: (f64, f64)) -> Vec<f64> {
    let (a, b) = (x_range.0.min(x_range.1), x_range.0.max(x_range.1));
    let step = PI / model.wave_number;
    let eps = 1e-12 * (1.0 + b.abs() / step);
    let n_min = (a / step - eps).ceil() as i64;
    let n_max = (b / step + eps).floor() as i64;
    (n_min..=n_max).map(|n| n as f64 * step).collect()
}

/// Synthetic field with unit-charge dislocations at the given centers
/// (sign +1 for counterclockwise), under a smooth positive envelope.
pub fn synthetic_vortex_field(
    grid: Grid2D,
    centers: &[([f64; 2], i32)],
    envelope_scale: f64,
) -> Result<ComplexField2D> {
    if centers.iter().any(|(_, q)| q.abs() != 1) {
        return Err(Error::NumericalInput("synthetic charges must be +1 or -1".into()));
    }
    let centers = centers.to_vec();
    ComplexField2D::from_fn(grid, move |x, y| {
        let mut z = Complex64::new(1.0, 0.0);
        let mut r2_sum = 0.0;
        for &(c, q) in &centers {
            let (dx, dy) = (x - c[0], y - c[1]);
            z *= Complex64::new(dx, q as f64 * dy);
            r2_sum += dx * dx + dy * dy;
        }
        z * (-r2_sum / (2.0 * envelope_scale * envelope_scale)).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vortex_grid() -> Grid2D {
        Grid2D::square(-2.0, 2.0, 81).unwrap()
    }

    fn single_vortex() -> WaveDecomposition {
        let field = ComplexField2D::from_fn(vortex_grid(), Complex64::new).unwrap();
        decompose(&field, None).unwrap()
    }

    /// Rectangle loop of lattice nodes, counterclockwise.
    fn rect_loop(i0: usize, i1: usize, j0: usize, j1: usize) -> Vec<(usize, usize)> {
        let mut nodes = Vec::new();
        for i in i0..i1 {
            nodes.push((i, j0));
        }
        for j in j0..j1 {
            nodes.push((i1, j));
        }
        for i in (i0 + 1..=i1).rev() {
            nodes.push((i, j1));
        }
        for j in (j0 + 1..=j1).rev() {
            nodes.push((i0, j));
        }
        nodes
    }

    #[test]
    fn decompose_constant_fields() {
        let grid = Grid2D::square(0.0, 1.0, 5).unwrap();
        let one = ComplexField2D::from_fn(grid.clone(), |_, _| Complex64::new(1.0, 0.0)).unwrap();
        let dec = decompose(&one, None).unwrap();
        assert!(dec.amplitude().values().iter().all(|&a| a == 1.0));
        assert!(dec.phase().values().iter().all(|&c| c == 0.0));

        let i_field = ComplexField2D::from_fn(grid, |_, _| Complex64::new(0.0, 1.0)).unwrap();
        let dec = decompose(&i_field, None).unwrap();
        assert!(dec.phase().values().iter().all(|&c| (c - PI / 2.0).abs() < 1e-15));
    }

    #[test]
    fn decompose_vortex_and_reconstruct() {
        let dec = single_vortex();
        let g = dec.grid().clone();
        for (i, j, x, y) in g.nodes() {
            let a = dec.amplitude().get(i, j);
            let r = (x * x + y * y).sqrt();
            assert!((a - r).abs() < 1e-14);
            if dec.is_indeterminate(i, j) {
                assert!(a <= dec.threshold());
                continue;
            }
            let chi = dec.phase().get(i, j);
            let rebuilt = Complex64::from_polar(a, chi);
            assert!((rebuilt - Complex64::new(x, y)).norm() <= 1e-12 * a.max(1.0));
        }
        // the exact zero at the origin is indeterminate
        assert!(dec.is_indeterminate(40, 40));
    }

    #[test]
    fn phase_lies_in_half_open_interval() {
        let dec = single_vortex();
        for &c in dec.phase().values() {
            assert!(c > -PI && c <= PI);
        }
    }

    #[test]
    fn current_of_constant_phase_vanishes() {
        let grid = Grid2D::square(0.0, 1.0, 11).unwrap();
        let field = ComplexField2D::from_fn(grid, |x, _| Complex64::new(1.0 + x, 0.0)).unwrap();
        let dec = decompose(&field, None).unwrap();
        let j = current(&dec).unwrap();
        assert!(j.u().iter().chain(j.v()).all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn plane_wave_current_is_uniform_across_branch_cuts() {
        // chi = 7x wraps several times over the grid
        let k = 7.0;
        let grid = Grid2D::square(0.0, 3.0, 61).unwrap();
        let field =
            ComplexField2D::from_fn(grid, |x, _| Complex64::from_polar(1.0, k * x)).unwrap();
        let dec = decompose(&field, None).unwrap();
        let j = current(&dec).unwrap();
        for v in j.u() {
            assert!((v - k).abs() < 1e-10, "j_x = {v}");
        }
        assert!(j.v().iter().all(|&v| v.abs() < 1e-10));
    }

    #[test]
    fn vortex_current_is_azimuthal() {
        let dec = single_vortex();
        let g = dec.grid().clone();
        let j = current(&dec).unwrap();
        for (i, jj, x, y) in g.nodes() {
            let r = (x * x + y * y).sqrt();
            if r < 0.5 || i == 0 || jj == 0 || i == g.nx - 1 || jj == g.ny - 1 {
                continue;
            }
            // j = alpha^2 grad(atan2) = r^2 * (-y, x)/r^2 = (-y, x)
            let (ju, jv) = j.get(i, jj);
            assert!((ju + y).abs() < 2e-3, "j_x at ({x}, {y}) = {ju}");
            assert!((jv - x).abs() < 2e-3, "j_y at ({x}, {y}) = {jv}");
        }
    }

    #[test]
    fn winding_of_uniform_field_is_zero() {
        let grid = Grid2D::square(0.0, 1.0, 21).unwrap();
        let field = ComplexField2D::from_fn(grid, |_, _| Complex64::new(1.0, 0.5)).unwrap();
        let dec = decompose(&field, None).unwrap();
        let loop_nodes = rect_loop(2, 18, 2, 18);
        assert_eq!(winding_number(&dec, &loop_nodes).unwrap(), 0);
    }

    #[test]
    fn winding_of_single_vortex_is_plus_one() {
        let dec = single_vortex();
        let loop_nodes = rect_loop(10, 70, 10, 70);
        assert_eq!(winding_number(&dec, &loop_nodes).unwrap(), 1);
        let raw = winding_raw(&dec, &loop_nodes).unwrap();
        assert!((raw - 1.0).abs() < 1e-10, "raw winding {raw}");
    }

    #[test]
    fn conjugation_flips_the_winding() {
        let field = ComplexField2D::from_fn(vortex_grid(), Complex64::new).unwrap();
        let dec = decompose(&field.conj(), None).unwrap();
        assert_eq!(winding_number(&dec, &rect_loop(10, 70, 10, 70)).unwrap(), -1);
    }

    #[test]
    fn vortex_antivortex_pair_cancels() {
        // dislocations of opposite charge at (0, 0) and (1, 0)
        let grid = Grid2D::square(-2.0, 3.0, 101).unwrap();
        let field = ComplexField2D::from_fn(grid, |x, y| {
            Complex64::new(x, y) * Complex64::new(x - 1.0, -y)
        })
        .unwrap();
        let dec = decompose(&field, None).unwrap();
        let loop_nodes = rect_loop(5, 95, 5, 95);
        assert_eq!(winding_number(&dec, &loop_nodes).unwrap(), 0);
    }

    #[test]
    fn loop_deformation_invariance() {
        let dec = single_vortex();
        for (i0, i1, j0, j1) in [(10, 70, 10, 70), (20, 60, 5, 75), (35, 45, 35, 45)] {
            assert_eq!(winding_number(&dec, &rect_loop(i0, i1, j0, j1)).unwrap(), 1);
        }
    }

    #[test]
    fn loop_through_the_core_is_rejected() {
        let dec = single_vortex();
        // path through the origin node (40, 40)
        let nodes = vec![(40, 40), (60, 40), (60, 60), (40, 60)];
        assert!(matches!(
            winding_number(&dec, &nodes),
            Err(Error::LoopTouchesIndeterminate { .. })
        ));
    }

    #[test]
    fn detect_amphidromic_on_clean_field_is_empty() {
        let grid = Grid2D::square(0.0, 1.0, 31).unwrap();
        let field =
            ComplexField2D::from_fn(grid, |x, _| Complex64::from_polar(1.0, 0.3 * x)).unwrap();
        let dec = decompose(&field, None).unwrap();
        assert!(detect_amphidromic(&dec).is_empty());
    }

    #[test]
    fn detect_single_rotary_system() {
        let field = synthetic_vortex_field(vortex_grid(), &[([0.0, 0.0], 1)], 1.5).unwrap();
        let dec = decompose(&field, None).unwrap();
        let points = detect_amphidromic(&dec);
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].charge, 1);
        assert!(points[0].position[0].abs() < 0.06);
        assert!(points[0].position[1].abs() < 0.06);
        // conjugation flips the detected charge at the same point
        let dec_conj = decompose(
            &synthetic_vortex_field(vortex_grid(), &[([0.0, 0.0], 1)], 1.5)
                .unwrap()
                .conj(),
            None,
        )
        .unwrap();
        let points_conj = detect_amphidromic(&dec_conj);
        assert_eq!(points_conj.len(), 1);
        assert_eq!(points_conj[0].charge, -1);
        assert_eq!(points_conj[0].node, points[0].node);
    }

    #[test]
    fn charge_additivity_against_boundary_loop() {
        let grid = Grid2D::square(-3.0, 3.0, 121).unwrap();
        let centers = [
            ([-1.0, -0.8], 1),
            ([1.2, -0.7], 1),
            ([-0.9, 1.1], -1),
            ([0.8, 0.9], 1),
        ];
        let field = synthetic_vortex_field(grid, &centers, 2.5).unwrap();
        let dec = decompose(&field, None).unwrap();
        let points = detect_amphidromic(&dec);
        assert_eq!(points.len(), 4);
        let total: i32 = points.iter().map(|p| p.charge).sum();
        let boundary = winding_number(&dec, &rect_loop(2, 118, 2, 118)).unwrap();
        assert_eq!(total, boundary);
        assert_eq!(boundary, 2);
    }

    #[test]
    fn cotidal_lines_of_plane_wave_are_vertical() {
        let k = 2.0;
        let grid = Grid2D::square(0.0, 3.0, 61).unwrap();
        let field =
            ComplexField2D::from_fn(grid, |x, _| Complex64::from_polar(1.0, k * x)).unwrap();
        let dec = decompose(&field, None).unwrap();
        let phi = 1.0;
        let chart = cotidal_lines(&dec, &[phi]).unwrap();
        assert!(chart.degenerate_phases.is_empty());
        assert!(!chart.curves.is_empty());
        for c in &chart.curves {
            for (_, p) in c.curve.samples() {
                // all level points satisfy chi(x) = phi mod 2 pi
                let d = wrap(phi, k * p[0]);
                assert!(d.abs() < 1e-9, "level error {d}");
            }
            // verticality: x spread within a curve is tiny
            let xs: Vec<f64> = c.curve.samples().iter().map(|(_, p)| p[0]).collect();
            let spread = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - xs.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread < 1e-9);
        }
    }

    #[test]
    fn cotidal_spokes_radiate_from_the_vortex() {
        let dec = single_vortex();
        let phases = [0.5, -2.0, 3.0];
        let chart = cotidal_lines(&dec, &phases).unwrap();
        assert!(chart.curves.len() >= phases.len());
        for c in &chart.curves {
            // a spoke of atan2(y, x) = phi: sample angles match phi up to
            // the linear edge-interpolation error, which grows like (h/r)^2
            // toward the core
            let h = 4.0 / 80.0;
            for (_, p) in c.curve.samples() {
                let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
                let ang = p[1].atan2(p[0]);
                let d = wrap(c.phase, ang);
                let tol = (0.5 * (h / r) * (h / r)).max(1e-9);
                assert!(d.abs() < tol, "spoke angle error {d} at r = {r}");
            }
            // the chain heads toward the center: min radius under 4 cells
            let r_min = c
                .curve
                .samples()
                .iter()
                .map(|(_, p)| (p[0] * p[0] + p[1] * p[1]).sqrt())
                .fold(f64::INFINITY, f64::min);
            assert!(r_min < 4.0 * 0.05 + 1e-9, "spoke stops at r = {r_min}");
        }
    }

    #[test]
    fn constant_phase_field_is_flagged_degenerate() {
        let grid = Grid2D::square(0.0, 1.0, 21).unwrap();
        let field = ComplexField2D::from_fn(grid, |_, _| Complex64::new(0.0, 2.0)).unwrap();
        let dec = decompose(&field, None).unwrap();
        let chart = cotidal_lines(&dec, &[PI / 2.0]).unwrap();
        assert_eq!(chart.degenerate_phases, vec![PI / 2.0]);
        assert!(chart.curves.is_empty());
    }

    #[test]
    fn standing_wave_nodes_at_integer_multiples() {
        let model = StandingWaveModel::new(1.0, 2.0, PI).unwrap();
        let nodes = standing_wave_nodes(&model, (0.0, 3.0));
        assert_eq!(nodes.len(), 4);
        for (n, x) in nodes.iter().enumerate() {
            assert!((x - n as f64).abs() < 1e-12);
        }
        // the displacement vanishes at every node for all times
        for &x in &nodes {
            for t in [0.0, 0.3, 1.7, 12.0] {
                assert!(model.eval(x, t).abs() <= 1e-15 * 2.0 * model.amplitude);
            }
        }
    }

    #[test]
    fn empty_node_range() {
        let model = StandingWaveModel::new(1.0, 2.0, PI).unwrap();
        assert!(standing_wave_nodes(&model, (0.1, 0.9)).is_empty());
    }
}
