//! Crate-wide error type.
//!
//! Errors are grouped by failure mode rather than by module: bad numerical
//! input, physically singular regimes, and solver breakdowns each map to a
//! distinct variant so the CLI can report a stable machine-readable `kind`.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite values, wrong array lengths, grids below stencil size, …
    #[error("invalid numerical input: {0}")]
    NumericalInput(String),

    /// Emission time outside the domain of the piston velocity record.
    #[error("emission time {t} outside piston domain [{t_min}, {t_max}]")]
    EmissionOutsideDomain { t: f64, t_min: f64, t_max: f64 },

    /// Froude number within the guard band of 1; the jump relation blows up.
    #[error("singular flow regime: |F - 1| = {deviation:e} inside the critical guard band")]
    SingularRegime { deviation: f64 },

    /// The exact jump relation has no root in the physical window.
    #[error("no physical root for the jump relation within |eps| <= {window}")]
    NoPhysicalRoot { window: f64 },

    /// Flow speed squared exceeds the Bernoulli constant (negative depth).
    #[error("cavitation: Q = {q} exceeds the Bernoulli constant C = {c}")]
    Cavitation { q: f64, c: f64 },

    /// Hodograph Jacobian denominator (f-u^2)(f-v^2) vanished.
    #[error("parabolic degeneracy at (u, v) = ({u}, {v}): (f-u^2)(f-v^2) = 0")]
    ParabolicDegeneracy { u: f64, v: f64 },

    /// Relaxation solve did not reach the requested residual.
    #[error("linear solve failed: residual {residual:e} after {iterations} iterations")]
    LinearSolveFailure { residual: f64, iterations: usize },

    /// The requested hodograph domain is not strictly elliptic.
    #[error("domain touches the parabolic boundary u^2+v^2 = f at ({u}, {v})")]
    DomainTouchesParabolic { u: f64, v: f64 },

    /// Launch state violates the eikonal constraint |p| = n(r).
    #[error("launch momentum off the eikonal shell: | |p| - n(r) | = {deviation:e}")]
    EikonalConstraint { deviation: f64 },

    /// Ray integration left the region where the index is positive.
    #[error("ray left the medium's positive-index domain near tau = {tau}")]
    RayExitedDomain { tau: f64 },

    /// Map point handed to the Whitney classifier is not rank deficient.
    #[error("point is not rank-deficient: singular value ratio {ratio:e}")]
    NotRankDeficient { ratio: f64 },

    /// Transport hierarchy division by a vanishing leading amplitude.
    #[error("leading amplitude vanishes at node {index}; higher transport residual undefined")]
    AmplitudeZero { index: usize },

    /// Airy evaluation outside the solution's constructed interval.
    #[error("Airy argument {t} outside evaluated interval [{t_min}, {t_max}]")]
    AiryRangeExceeded { t: f64, t_min: f64, t_max: f64 },

    /// The requested zone operation met the wrong sign of rho_L.
    #[error("rho_L = {rho} has the wrong sign for this zone at node {index}")]
    WrongZone { rho: f64, index: usize },

    /// One-dimensional root finder failed to converge or to bracket.
    #[error("root finding failed: {0}")]
    RootFind(String),

    /// Winding loop passes through a node with indeterminate phase.
    #[error("loop touches indeterminate phase at node ({i}, {j})")]
    LoopTouchesIndeterminate { i: usize, j: usize },

    /// Loop too coarse: accumulated phase not near an integer multiple of 2 pi.
    #[error("winding {raw} turns is {deviation} from the nearest integer (guard {guard})")]
    WindingNotQuantized { raw: f64, deviation: f64, guard: f64 },

    /// Configuration / CLI usage problems (exit code 1).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable kind tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NumericalInput(_) => "numerical-input",
            Error::EmissionOutsideDomain { .. } => "emission-outside-domain",
            Error::SingularRegime { .. } => "singular-regime",
            Error::NoPhysicalRoot { .. } => "no-physical-root",
            Error::Cavitation { .. } => "cavitation",
            Error::ParabolicDegeneracy { .. } => "parabolic-degeneracy",
            Error::LinearSolveFailure { .. } => "linear-solve-failure",
            Error::DomainTouchesParabolic { .. } => "domain-touches-parabolic",
            Error::EikonalConstraint { .. } => "eikonal-constraint",
            Error::RayExitedDomain { .. } => "ray-exited-domain",
            Error::NotRankDeficient { .. } => "not-rank-deficient",
            Error::AmplitudeZero { .. } => "amplitude-zero",
            Error::AiryRangeExceeded { .. } => "airy-range-exceeded",
            Error::WrongZone { .. } => "wrong-zone",
            Error::RootFind(_) => "root-find",
            Error::LoopTouchesIndeterminate { .. } => "loop-indeterminate",
            Error::WindingNotQuantized { .. } => "winding-not-quantized",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            _ => 2,
        }
    }
}
