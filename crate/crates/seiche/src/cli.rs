//! Command-line driver: one subcommand per module, deterministic outputs.
//!
//! Configuration comes from an optional JSON file plus `--flag value` pairs;
//! flags override JSON keys and unknown keys are rejected. Every run returns
//! a report listing the files written with content hashes. Exit codes:
//! 0 success, 1 configuration/usage error, 2 numerical failure (with a
//! machine-readable JSON error on standard error).

use crate::airy::AirySolution;
use crate::bore;
use crate::characteristics::{self, PistonMotion, PistonPath};
use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::hodograph::{self, Disc, FCoefficient, SolveOptions};
use crate::io;
use crate::numeric::fnv1a64;
use crate::phase;
use crate::rays::{self, CausticDetectOptions, IndexProfile, MediumSpec, RayState};
use crate::steady::{self, SteadyFlowConfig};
use crate::uniform::{self, UniformAnsatz};
use crate::wavefront::{self, Direction, SourceCurve};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};

pub const USAGE: &str = "usage: seiche <subcommand> [--config FILE] [--out DIR] [--seed N] [--tol NAME=VALUE] [--key value ...]
subcommands: characteristics | bore | steady | hodograph [verify] | rays | caustic [eval] | wavefront | amphidromic";

/// Named tolerance overrides accepted through `--tol NAME=VALUE`.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    /// |det| threshold for caustic bisection.
    pub det: f64,
    /// Absolute amplitude threshold for indeterminate phase (0 = relative default).
    pub alpha_threshold: f64,
    /// Relaxation solve tolerance for the hodograph theorem check.
    pub solve: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-12,
            alpha_threshold: 0.0,
            solve: 1e-12,
        }
    }
}

impl Tolerances {
    fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0) {
            return Err(Error::Config(format!("tolerance {name} must be positive")));
        }
        match name {
            "det" => self.det = value,
            "alpha-threshold" => self.alpha_threshold = value,
            "solve" => self.solve = value,
            _ => {
                return Err(Error::Config(format!(
                    "unknown tolerance `{name}` (known: det, alpha-threshold, solve)"
                )))
            }
        }
        Ok(())
    }
}

/// A fully parsed run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: String,
    pub params: Value,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub tolerances: Tolerances,
}

/// One output file with its content hash.
#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub path: String,
    pub fnv1a64: String,
}

/// Outcome of a run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub wall_time_s: f64,
    pub seed: u64,
    pub manifest: Vec<ManifestEntry>,
    pub warnings: Vec<String>,
}

/// Parse argv (without the program name) into a run configuration.
/// Flags override JSON config keys; unknown keys are rejected later, when
/// the merged object is deserialized against the subcommand schema.
pub fn parse_config(argv: &[String]) -> Result<RunConfig> {
    if argv.is_empty() {
        return Err(Error::Config(format!("missing subcommand\n{USAGE}")));
    }
    let mut subcommand = argv[0].clone();
    let known = [
        "characteristics",
        "bore",
        "steady",
        "hodograph",
        "rays",
        "caustic",
        "wavefront",
        "amphidromic",
    ];
    if !known.contains(&subcommand.as_str()) {
        return Err(Error::Config(format!(
            "unknown subcommand `{subcommand}`\n{USAGE}"
        )));
    }
    let mut rest = &argv[1..];
    // optional action word: `hodograph verify`, `caustic eval`
    if let Some(first) = rest.first() {
        if !first.starts_with("--") {
            match (subcommand.as_str(), first.as_str()) {
                ("hodograph", "verify") | ("caustic", "eval") => {
                    rest = &rest[1..];
                }
                _ => {
                    return Err(Error::Config(format!(
                        "unexpected token `{first}` after `{subcommand}`\n{USAGE}"
                    )))
                }
            }
        }
    }
    let _ = &mut subcommand;

    let mut out_dir = PathBuf::from(".");
    let mut config_path: Option<PathBuf> = None;
    let mut seed = 0u64;
    let mut tolerances = Tolerances::default();
    let mut flag_object = Map::new();

    let mut k = 0;
    while k < rest.len() {
        let flag = &rest[k];
        let Some(name) = flag.strip_prefix("--") else {
            return Err(Error::Config(format!("expected --flag, found `{flag}`\n{USAGE}")));
        };
        let value = rest
            .get(k + 1)
            .ok_or_else(|| Error::Config(format!("flag --{name} needs a value")))?;
        k += 2;
        match name {
            "out" => out_dir = PathBuf::from(value),
            "config" => config_path = Some(PathBuf::from(value)),
            "seed" => {
                seed = value
                    .parse()
                    .map_err(|_| Error::Config(format!("bad seed `{value}`")))?
            }
            "tol" => {
                let (tname, tval) = value
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("--tol expects NAME=VALUE, got `{value}`")))?;
                let tval: f64 = tval
                    .parse()
                    .map_err(|_| Error::Config(format!("bad tolerance value in `{value}`")))?;
                tolerances.set(tname, tval)?;
            }
            _ => {
                // subcommand parameter: integers stay integers, floats stay
                // floats, all else strings
                let parsed = if let Ok(n) = value.parse::<i64>() {
                    Value::Number(n.into())
                } else if let Some(n) = value
                    .parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                {
                    Value::Number(n)
                } else {
                    Value::String(value.clone())
                };
                flag_object.insert(name.to_string(), parsed);
            }
        }
    }

    let mut params = match config_path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            match v {
                Value::Object(m) => m,
                _ => return Err(Error::Config(format!("{}: config must be a JSON object", p.display()))),
            }
        }
        None => Map::new(),
    };
    for (key, value) in flag_object {
        params.insert(key, value);
    }

    Ok(RunConfig {
        subcommand,
        params: Value::Object(params),
        out_dir,
        seed,
        tolerances,
    })
}

fn from_params<T: for<'de> Deserialize<'de>>(params: &Value) -> Result<T> {
    serde_json::from_value(params.clone()).map_err(|e| Error::Config(e.to_string()))
}

struct Outputs {
    dir: PathBuf,
    manifest: Vec<ManifestEntry>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            manifest: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents.as_bytes())?;
        self.manifest.push(ManifestEntry {
            path: name.to_string(),
            fnv1a64: format!("{:016x}", fnv1a64(contents.as_bytes())),
        });
        Ok(())
    }
}

/// Execute a parsed run. Returns the report and the result JSON printed to
/// standard output (when the subcommand produces one).
pub fn run(cfg: &RunConfig) -> Result<(RunReport, Option<Value>)> {
    let started = std::time::Instant::now();
    let mut outputs = Outputs::new(&cfg.out_dir)?;
    let mut warnings = Vec::new();
    let result = match cfg.subcommand.as_str() {
        "characteristics" => run_characteristics(cfg, &mut outputs)?,
        "bore" => run_bore(cfg, &mut warnings)?,
        "steady" => run_steady(cfg, &mut outputs)?,
        "hodograph" => run_hodograph(cfg, &mut outputs)?,
        "rays" => run_rays(cfg, &mut outputs)?,
        "caustic" => run_caustic(cfg, &mut outputs)?,
        "wavefront" => run_wavefront(cfg, &mut outputs)?,
        "amphidromic" => run_amphidromic(cfg, &mut outputs)?,
        other => return Err(Error::Config(format!("unknown subcommand `{other}`"))),
    };
    let mut manifest = outputs.manifest;
    manifest.sort_by(|a, b| a.path.cmp(&b.path));
    Ok((
        RunReport {
            subcommand: cfg.subcommand.clone(),
            wall_time_s: started.elapsed().as_secs_f64(),
            seed: cfg.seed,
            manifest,
            warnings,
        },
        result,
    ))
}

// ---------------------------------------------------------------------------
// characteristics
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PistonConfig {
    kind: String,
    #[serde(default)]
    a: Option<f64>,
    #[serde(default)]
    times: Option<Vec<f64>>,
    #[serde(default)]
    velocities: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacteristicsConfig {
    c0: f64,
    #[serde(default = "default_gravity")]
    g: f64,
    piston: PistonConfig,
    emission_times: Vec<f64>,
}

fn default_gravity() -> f64 {
    9.8
}

fn run_characteristics(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: CharacteristicsConfig = from_params(&cfg.params)?;
    if !(c.g > 0.0) {
        return Err(Error::Config(format!("g = {} must be positive", c.g)));
    }
    let motion = match c.piston.kind.as_str() {
        "linear" => PistonMotion::Linear {
            a: c.piston
                .a
                .ok_or_else(|| Error::Config("linear piston needs `a`".into()))?,
        },
        "table" => PistonMotion::Table {
            times: c
                .piston
                .times
                .ok_or_else(|| Error::Config("table piston needs `times`".into()))?,
            velocities: c
                .piston
                .velocities
                .ok_or_else(|| Error::Config("table piston needs `velocities`".into()))?,
        },
        other => return Err(Error::Config(format!("unknown piston kind `{other}`"))),
    };
    let path = PistonPath::new(motion, c.c0).map_err(config_if_input)?;
    let lines = characteristics::emit_characteristics(&path, &c.emission_times)?;
    out.write(
        "lines.csv",
        &io::render_csv("t0,x0,v", lines.iter().map(|l| [l.t0, l.x0, l.v])),
    )?;
    let focus = characteristics::first_focusing_time(&lines);
    out.write(
        "focus.csv",
        &io::render_csv("t,x", focus.iter().map(|(t, x)| [*t, *x])),
    )?;
    Ok(None)
}

// ---------------------------------------------------------------------------
// bore
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoreConfig {
    #[serde(rename = "H")]
    depth: f64,
    #[serde(default = "default_gravity")]
    g: f64,
    u: f64,
    delta: f64,
}

fn run_bore(cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<Option<Value>> {
    let c: BoreConfig = from_params(&cfg.params)?;
    let input = bore::BoreInput::new(c.depth, c.delta, c.u, c.g).map_err(config_if_input)?;
    if let Some(w) = input.slenderness_warning() {
        warnings.push(w);
    }
    let regime = bore::froude(input.u, input.c())?;
    let eps_first = bore::elevation_first_order(&input)?;
    let eps_exact = bore::elevation_exact(&input)?;
    let h = input.depth;
    let lhs = (h * h + 2.0 * h * eps_exact + eps_exact * eps_exact) * 2.0 * input.g * eps_exact;
    let rhs = input.u * input.u * (2.0 * h + eps_exact + input.delta) * (eps_exact - input.delta);
    let residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
    Ok(Some(json!({
        "froude": regime.froude,
        "regime": regime.tag.as_str(),
        "eps_first_order": eps_first,
        "eps_exact": eps_exact,
        "residual": residual,
    })))
}

// ---------------------------------------------------------------------------
// steady
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SteadyConfig {
    field: String,
    #[serde(rename = "C")]
    bernoulli: f64,
    #[serde(default = "default_gravity")]
    g: f64,
}

fn run_steady(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: SteadyConfig = from_params(&cfg.params)?;
    let vf = io::read_vector_csv(Path::new(&c.field))?;
    let flow = SteadyFlowConfig::new(c.bernoulli, c.g).map_err(config_if_input)?;
    let (r_cont, r_curl) = steady::residuals(&vf, &flow)?;
    let type_map = steady::classify_type(&vf, &flow)?;
    out.write("residual_continuity.csv", &scalar_csv(&r_cont))?;
    out.write("residual_curl.csv", &scalar_csv(&r_curl))?;
    let grid = type_map.grid();
    let mut body = String::from("x,y,tag\n");
    for (i, j, x, y) in grid.nodes() {
        body.push_str(&format!(
            "{},{},{}\n",
            io::fmt_f64(x),
            io::fmt_f64(y),
            type_map.get(i, j).tag()
        ));
    }
    out.write("typemap.csv", &body)?;
    Ok(None)
}

fn scalar_csv(field: &crate::field::ScalarField2D) -> String {
    let g = field.grid();
    io::render_csv(
        "x,y,value",
        g.nodes().map(|(i, j, x, y)| [x, y, field.get(i, j)]),
    )
}

// ---------------------------------------------------------------------------
// hodograph
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HodographConfig {
    #[serde(default = "default_f")]
    f: String,
    #[serde(default = "default_radius")]
    radius: f64,
    #[serde(default = "default_n")]
    n: usize,
}

fn default_f() -> String {
    "unity".into()
}

fn default_radius() -> f64 {
    0.8
}

fn default_n() -> usize {
    101
}

fn run_hodograph(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: HodographConfig = from_params(&cfg.params)?;
    let f = match c.f.as_str() {
        "unity" => FCoefficient::Unity,
        "quartic" => FCoefficient::Quartic,
        other => return Err(Error::Config(format!("unknown coefficient `{other}`"))),
    };
    if !(c.radius > 0.0) || c.n < 9 {
        return Err(Error::Config("need radius > 0 and n >= 9".into()));
    }
    let (grid, disc) = match f {
        FCoefficient::Unity => {
            let half = c.radius * 1.125;
            (
                Grid2D::square(-half, half, c.n).map_err(config_if_input)?,
                Disc { cu: 0.0, cv: 0.0, radius: c.radius },
            )
        }
        FCoefficient::Quartic => {
            // elliptic region lies outside the unit circle; center at u = 2
            let half = c.radius * 1.125;
            (
                Grid2D::new(2.0 - half, 2.0 + half, -half, half, c.n, c.n)
                    .map_err(config_if_input)?,
                Disc { cu: 2.0, cv: 0.0, radius: c.radius },
            )
        }
    };
    let report = hodograph::verify_theorem_numerically(
        &f,
        &grid,
        disc,
        |u, _| u,
        SolveOptions {
            tolerance: cfg.tolerances.solve,
            ..SolveOptions::default()
        },
    )?;
    out.write(
        "jacobian.csv",
        &io::render_csv("u,v,j", report.jacobian_rows.iter().copied()),
    )?;
    Ok(Some(json!({
        "f": f.name(),
        "radius": c.radius,
        "n": c.n,
        "interior_nodes": report.interior_nodes,
        "negative": report.negative,
        "near_zero": report.near_zero,
        "nonnegative": report.nonnegative,
        "min_j": report.min_j,
        "max_j": report.max_j,
        "max_rel_disagreement": report.max_rel_disagreement,
        "iterations": report.iterations,
    })))
}

// ---------------------------------------------------------------------------
// rays
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MediumConfig {
    kind: String,
    #[serde(default)]
    n: Option<f64>,
    #[serde(default)]
    base: Option<f64>,
    #[serde(default)]
    slope: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaunchConfig {
    kind: String,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    x_min: Option<f64>,
    #[serde(default)]
    x_max: Option<f64>,
    #[serde(default)]
    y0: Option<f64>,
    #[serde(default)]
    focus: Option<[f64; 2]>,
    #[serde(default)]
    phi_margin: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaysConfig {
    medium: MediumConfig,
    launch: LaunchConfig,
    tau_max: f64,
    dtau: f64,
    #[serde(default = "default_k")]
    k: f64,
}

fn default_k() -> f64 {
    1.0
}

fn run_rays(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: RaysConfig = from_params(&cfg.params)?;
    let profile = match c.medium.kind.as_str() {
        "homogeneous" => IndexProfile::Homogeneous {
            n: c.medium.n.unwrap_or(1.0),
        },
        "linear" => IndexProfile::LinearSquared {
            base: c.medium.base.unwrap_or(1.0),
            slope: c
                .medium
                .slope
                .ok_or_else(|| Error::Config("linear medium needs `slope`".into()))?,
        },
        other => return Err(Error::Config(format!("unknown medium kind `{other}`"))),
    };
    let medium = MediumSpec::new(profile, c.k, None).map_err(config_if_input)?;
    let launch_n = c.launch.n.unwrap_or(101);
    let fan = match c.launch.kind.as_str() {
        "parallel" | "converging" => {
            let x_min = c.launch.x_min.unwrap_or(-1.0);
            let x_max = c.launch.x_max.unwrap_or(1.0);
            if !(x_min < x_max) || launch_n < 3 {
                return Err(Error::Config("launch needs x_min < x_max and n >= 3".into()));
            }
            let xi: Vec<f64> = (0..launch_n)
                .map(|k| x_min + (x_max - x_min) * k as f64 / (launch_n - 1) as f64)
                .collect();
            let y0 = c.launch.y0.unwrap_or(0.0);
            if c.launch.kind == "parallel" {
                rays::RayFan::trace(
                    |x| RayState::launch([x, y0], [0.0, 1.0], &medium),
                    &xi,
                    &medium,
                    c.tau_max,
                    c.dtau,
                )?
            } else {
                let focus = c
                    .launch
                    .focus
                    .ok_or_else(|| Error::Config("converging launch needs `focus`".into()))?;
                rays::RayFan::trace(
                    |x| RayState::launch([x, y0], [focus[0] - x, focus[1] - y0], &medium),
                    &xi,
                    &medium,
                    c.tau_max,
                    c.dtau,
                )?
            }
        }
        "circle_mirror" => rays::reflected_circle_fan(
            launch_n,
            c.launch.phi_margin.unwrap_or(0.05),
            c.tau_max,
            c.dtau,
        )?,
        other => return Err(Error::Config(format!("unknown launch kind `{other}`"))),
    };
    let mut fan_csv = String::from("xi,tau,x,y,px,py,psi\n");
    for (i, &xi) in fan.xi.iter().enumerate() {
        for s in &fan.trajectories[i].states {
            fan_csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                io::fmt_f64(xi),
                io::fmt_f64(s.tau),
                io::fmt_f64(s.r[0]),
                io::fmt_f64(s.r[1]),
                io::fmt_f64(s.p[0]),
                io::fmt_f64(s.p[1]),
                io::fmt_f64(s.psi)
            ));
        }
    }
    out.write("fan.csv", &fan_csv)?;
    let points = rays::detect_caustic(
        &fan,
        &medium,
        &CausticDetectOptions {
            det_tolerance: cfg.tolerances.det,
            classify: true,
            ..CausticDetectOptions::default()
        },
    );
    let mut caustic_csv = String::from("x,y,type\n");
    for p in &points {
        caustic_csv.push_str(&format!(
            "{},{},{}\n",
            io::fmt_f64(p.position[0]),
            io::fmt_f64(p.position[1]),
            p.kind.as_str()
        ));
    }
    out.write("caustics.csv", &caustic_csv)?;
    Ok(None)
}

// ---------------------------------------------------------------------------
// caustic eval
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
}

impl GridConfig {
    fn build(&self) -> Result<Grid2D> {
        Grid2D::new(self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny)
            .map_err(config_if_input)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnsatzConfig {
    kind: String,
    #[serde(default)]
    grid: Option<GridConfig>,
    #[serde(default)]
    theta: Option<String>,
    #[serde(default)]
    rho: Option<String>,
    #[serde(default)]
    g0: Option<String>,
    #[serde(default)]
    g1: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CausticConfig {
    ansatz: AnsatzConfig,
    k: f64,
}

fn run_caustic(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: CausticConfig = from_params(&cfg.params)?;
    let ansatz = match c.ansatz.kind.as_str() {
        "canonical-fold" => {
            let grid = c
                .ansatz
                .grid
                .as_ref()
                .ok_or_else(|| Error::Config("canonical-fold needs `grid`".into()))?
                .build()?;
            UniformAnsatz::canonical_fold(grid, c.k).map_err(config_if_input)?
        }
        "csv" => {
            let read = |name: &Option<String>, what: &str| -> Result<crate::field::ScalarField2D> {
                let p = name
                    .as_ref()
                    .ok_or_else(|| Error::Config(format!("csv ansatz needs `{what}`")))?;
                io::read_scalar_csv(Path::new(p))
            };
            UniformAnsatz::new(
                read(&c.ansatz.theta, "theta")?,
                read(&c.ansatz.rho, "rho")?,
                read(&c.ansatz.g0, "g0")?,
                read(&c.ansatz.g1, "g1")?,
                c.k,
            )
            .map_err(config_if_input)?
        }
        other => return Err(Error::Config(format!("unknown ansatz kind `{other}`"))),
    };
    let k23 = c.k.powf(2.0 / 3.0);
    let t_min = ansatz.rho.values().iter().cloned().fold(f64::INFINITY, f64::min) * k23 - 1.0;
    let t_max = ansatz.rho.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max) * k23 + 1.0;
    let airy = AirySolution::ai_branch(t_min.min(-1.0), t_max.max(1.0))?;
    let field = uniform::evaluate_uniform_field(&ansatz, &airy)?;
    let zones = ansatz.zones();
    let grid = field.grid();
    let mut body = String::from("x,y,re,im,zone\n");
    for (i, j, x, y) in grid.nodes() {
        let z = field.get(i, j);
        body.push_str(&format!(
            "{},{},{},{},{}\n",
            io::fmt_f64(x),
            io::fmt_f64(y),
            io::fmt_f64(z.re),
            io::fmt_f64(z.im),
            zones[grid.idx(i, j)].tag()
        ));
    }
    out.write("field.csv", &body)?;
    Ok(None)
}

// ---------------------------------------------------------------------------
// wavefront
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableConfig {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WavefrontConfig {
    source: String,
    direction: String,
    #[serde(default)]
    times: Vec<f64>,
    #[serde(default)]
    x_min: Option<f64>,
    #[serde(default)]
    x_max: Option<f64>,
    #[serde(default = "default_samples")]
    n_samples: usize,
    #[serde(default)]
    radius: Option<f64>,
    #[serde(default)]
    table: Option<TableConfig>,
}

fn default_samples() -> usize {
    201
}

fn run_wavefront(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: WavefrontConfig = from_params(&cfg.params)?;
    let direction = match c.direction.as_str() {
        "plus" => Direction::Plus,
        "minus" => Direction::Minus,
        other => return Err(Error::Config(format!("unknown direction `{other}`"))),
    };
    let src = match c.source.as_str() {
        "quartic" => SourceCurve::quartic(c.x_min.unwrap_or(-2.0), c.x_max.unwrap_or(2.0))
            .map_err(config_if_input)?,
        "circle" => {
            let r = c.radius.unwrap_or(1.0);
            SourceCurve::semicircle(r, 0.1 * r).map_err(config_if_input)?
        }
        "table" => {
            let t = c
                .table
                .ok_or_else(|| Error::Config("table source needs `table`".into()))?;
            SourceCurve::from_table(t.xs, t.ys).map_err(config_if_input)?
        }
        other => return Err(Error::Config(format!("unknown source `{other}`"))),
    };
    for &t in &c.times {
        let front = wavefront::evolve(&src, t, direction, c.n_samples)?;
        let mut body = String::from("x,wx,wy,tx,ty\n");
        for ((x, p), tangent) in front.curve.samples().iter().zip(&front.tangents) {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                io::fmt_f64(*x),
                io::fmt_f64(p[0]),
                io::fmt_f64(p[1]),
                io::fmt_f64(tangent[0]),
                io::fmt_f64(tangent[1])
            ));
        }
        out.write(&format!("front_{t}.csv"), &body)?;
    }
    // singular times over a range away from flat samples
    let lo = c.x_min.unwrap_or(src.x_min);
    let hi = c.x_max.unwrap_or(src.x_max);
    let times = wavefront::singular_times(&src, direction, (lo, hi), c.n_samples)?;
    let mut body = String::from("x,t_singular\n");
    for (x, t) in &times {
        if let Some(t) = t {
            body.push_str(&format!("{},{}\n", io::fmt_f64(*x), io::fmt_f64(*t)));
        }
    }
    out.write("singular.csv", &body)?;
    Ok(None)
}

// ---------------------------------------------------------------------------
// amphidromic
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstituentModel {
    kind: String,
    #[serde(default)]
    kx: Option<f64>,
    #[serde(default)]
    ky: Option<f64>,
    #[serde(default)]
    x0: Option<f64>,
    #[serde(default)]
    y0: Option<f64>,
    #[serde(default)]
    charge: Option<i32>,
    #[serde(default)]
    scale: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Constituent {
    amplitude: f64,
    phase_lag: f64,
    model: ConstituentModel,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HarmonicConfig {
    grid: GridConfig,
    constituents: Vec<Constituent>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmphidromicConfig {
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    harmonic: Option<HarmonicConfig>,
    #[serde(default = "default_phases")]
    phases: Vec<f64>,
}

fn default_phases() -> Vec<f64> {
    vec![0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, -std::f64::consts::FRAC_PI_2]
}

fn run_amphidromic(cfg: &RunConfig, out: &mut Outputs) -> Result<Option<Value>> {
    let c: AmphidromicConfig = from_params(&cfg.params)?;
    let field = match (&c.field, &c.harmonic) {
        (Some(path), None) => io::read_complex_csv(Path::new(path))?,
        (None, Some(h)) => {
            let grid = h.grid.build()?;
            let mut total = vec![Complex64::new(0.0, 0.0); grid.len()];
            for constituent in &h.constituents {
                let a = constituent.amplitude;
                let lag = constituent.phase_lag;
                let m = &constituent.model;
                match m.kind.as_str() {
                    "plane" => {
                        let kx = m.kx.unwrap_or(1.0);
                        let ky = m.ky.unwrap_or(0.0);
                        for (i, j, x, y) in grid.nodes() {
                            total[grid.idx(i, j)] +=
                                Complex64::from_polar(a, kx * x + ky * y - lag);
                        }
                    }
                    "vortex" => {
                        let x0 = m.x0.unwrap_or(0.0);
                        let y0 = m.y0.unwrap_or(0.0);
                        let q = m.charge.unwrap_or(1);
                        if q.abs() != 1 {
                            return Err(Error::Config("vortex charge must be +1 or -1".into()));
                        }
                        let s = m.scale.unwrap_or(1.0);
                        for (i, j, x, y) in grid.nodes() {
                            let (dx, dy) = (x - x0, y - y0);
                            let z = Complex64::new(dx, q as f64 * dy);
                            let env = (-(dx * dx + dy * dy) / (2.0 * s * s)).exp();
                            total[grid.idx(i, j)] +=
                                a * z * env * Complex64::from_polar(1.0, -lag);
                        }
                    }
                    other => {
                        return Err(Error::Config(format!("unknown constituent model `{other}`")))
                    }
                }
            }
            crate::field::ComplexField2D::new(grid, total)?
        }
        _ => {
            return Err(Error::Config(
                "amphidromic needs exactly one of `field` (CSV path) or `harmonic`".into(),
            ))
        }
    };
    let threshold = (cfg.tolerances.alpha_threshold > 0.0).then_some(cfg.tolerances.alpha_threshold);
    let dec = phase::decompose(&field, threshold)?;
    let points = phase::detect_amphidromic(&dec);
    let mut body = String::from("x,y,charge\n");
    for p in &points {
        body.push_str(&format!(
            "{},{},{}\n",
            io::fmt_f64(p.position[0]),
            io::fmt_f64(p.position[1]),
            p.charge
        ));
    }
    out.write("points.csv", &body)?;
    let chart = phase::cotidal_lines(&dec, &c.phases)?;
    let mut body = String::from("phase,x,y,segment_id\n");
    for (sid, curve) in chart.curves.iter().enumerate() {
        for (_, p) in curve.curve.samples() {
            body.push_str(&format!(
                "{},{},{},{}\n",
                io::fmt_f64(curve.phase),
                io::fmt_f64(p[0]),
                io::fmt_f64(p[1]),
                sid
            ));
        }
    }
    out.write("cotidal.csv", &body)?;
    Ok(None)
}

/// Input-validation failures at configuration time map to exit code 1.
fn config_if_input(e: Error) -> Error {
    match e {
        Error::NumericalInput(msg) => Error::Config(msg),
        other => other,
    }
}

/// Binary entry point: parse, run, print, exit code.
pub fn main_entry(argv: &[String]) -> i32 {
    let cfg = match parse_config(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            return e.exit_code();
        }
    };
    match run(&cfg) {
        Ok((report, result)) => {
            if let Some(value) = result {
                println!("{value}");
            }
            eprintln!("{}", serde_json::to_string(&report).unwrap());
            0
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            e.exit_code()
        }
    }
}
