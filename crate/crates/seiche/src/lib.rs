//! Singularities of water-wave and ray-optics fields.
//!
//! `seiche` computes, detects, and classifies the singular structures that
//! organize extreme wave behavior:
//!
//! - characteristic fans and their envelopes in a shallow tidal channel
//!   ([`characteristics`]), with the bore jump model ([`bore`]) for the wave
//!   after breaking;
//! - steady shallow-water flow: type classification across the sonic set and
//!   the flow energy functional ([`steady`]);
//! - the hodograph-plane Jacobian analysis of the mixed-type system
//!   ([`hodograph`]);
//! - Hamiltonian ray tracing, caustic detection by rank of the derivative
//!   map, and Whitney fold/cusp classification ([`rays`]);
//! - the Airy boundary layer that smooths a fold caustic ([`airy`],
//!   [`uniform`]);
//! - wavefronts evolving along their normals and their singular times
//!   ([`wavefront`]);
//! - phase singularities of complex scalar waves: winding numbers,
//!   amphidromic points, cotidal charts ([`phase`]).
//!
//! The `examples/` directory holds one runnable program per capability; the
//! thin `seiche` binary exposes the same operations as subcommands writing
//! deterministic CSV/JSON.

pub mod error;
pub mod numeric;
pub mod parallel;
pub mod grid;
pub mod field;
pub mod curve;
pub mod io;
pub mod characteristics;
pub mod bore;
pub mod steady;
pub mod hodograph;
pub mod rays;
pub mod airy;
pub mod uniform;
pub mod wavefront;
pub mod phase;
pub mod cli;

pub use error::{Error, Result};
pub use field::{ComplexField2D, ScalarField2D, VectorField2D};
pub use grid::{Grid2D, GridWindow};
pub use numeric::winding_aware_phase_difference;

/// Entry point for the `seiche` binary; returns the process exit code.
pub fn cli_main() -> i32 {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    cli::main_entry(&argv)
}
