//! Hamiltonian ray tracing in a stratified medium and caustic detection on
//! a converging fan.
//!
//! ```bash
//! cargo run --example ray_tracing
//! ```

use seiche::rays::{
    converging_fan, detect_caustic, eikonal_residual, trace_ray, CausticDetectOptions,
    IndexProfile, MediumSpec, RayState,
};
use seiche::{Grid2D, ScalarField2D};

fn main() -> seiche::Result<()> {
    // n^2 = 1 + y/2: rays launched upward slow their climb... momentum
    // grows with the index gradient, bending the path
    let medium = MediumSpec::new(IndexProfile::LinearSquared { base: 1.0, slope: 0.5 }, 1.0, None)?;
    let start = RayState::launch([0.0, 0.0], [0.6, 0.8], &medium)?;
    let traj = trace_ray(&start, &medium, 2.0, 1e-3)?;
    println!("ray through a stratified medium (n^2 = 1 + y/2):");
    for s in traj.states.iter().step_by(500) {
        println!(
            "  tau = {:>4.1}: r = ({:+.4}, {:+.4})  |p| - n = {:+.1e}  psi = {:.4}",
            s.tau,
            s.r[0],
            s.r[1],
            s.constraint_deviation(&medium).sqrt(),
            s.psi
        );
    }

    // a plane wave solves the eikonal equation exactly
    let grid = Grid2D::square(0.0, 1.0, 41)?;
    let psi = ScalarField2D::from_fn(grid, |x, _| x)?;
    let flat = MediumSpec::homogeneous(1.0, 1.0)?;
    println!(
        "\nplane-wave eikonal residual: {:.1e}",
        eikonal_residual(&psi, &flat)?.max_abs()
    );

    // straight rays aimed at a focus merge there: the degenerate caustic
    let xi: Vec<f64> = (0..201).map(|k| -0.5 + k as f64 / 200.0).collect();
    let fan = converging_fan(&xi, [0.0, 1.0], 1.6, 0.02)?;
    let points = detect_caustic(&fan, &flat, &CausticDetectOptions::default());
    let spread = points
        .iter()
        .map(|p| ((p.position[0]).powi(2) + (p.position[1] - 1.0).powi(2)).sqrt())
        .fold(0.0f64, f64::max);
    println!(
        "converging fan: {} merge points, all within {:.1e} of the focus",
        points.len(),
        spread
    );
    Ok(())
}
