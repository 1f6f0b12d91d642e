//! The coffee-cup caustic: parallel rays reflected by the inside of a
//! circular mirror envelope a nephroid with its cusp at half the radius.
//!
//! ```bash
//! cargo run --example nephroid_caustic
//! ```

use seiche::rays::{detect_caustic, reflected_circle_fan, CausticDetectOptions, MediumSpec, SingularityType};

fn main() -> seiche::Result<()> {
    let fan = reflected_circle_fan(2001, 0.2, 1.0, 0.02)?;
    let medium = MediumSpec::homogeneous(1.0, 1.0)?;
    let points = detect_caustic(
        &fan,
        &medium,
        &CausticDetectOptions {
            classify: true,
            ..CausticDetectOptions::default()
        },
    );

    let folds = points.iter().filter(|p| p.kind == SingularityType::Fold).count();
    let cusps: Vec<_> = points
        .iter()
        .filter(|p| p.kind == SingularityType::Cusp)
        .collect();
    println!("detected {} caustic points: {} folds, {} cusp(s)", points.len(), folds, cusps.len());
    for c in &cusps {
        println!(
            "cusp at ({:+.6}, {:+.6})  -- the envelope vertex at half the mirror radius",
            c.position[0], c.position[1]
        );
    }

    // distance of a few detected points to the hand-derived envelope
    println!("\nsample of the arc:");
    for p in points.iter().step_by(400) {
        // envelope of the reflected pencil: E(phi) = M - (sin(phi)/2) d'
        let mut best = f64::INFINITY;
        for k in 0..=20_000 {
            let phi = std::f64::consts::PI * (1.0 + k as f64 / 20_000.0);
            let (s, c) = (phi.sin(), phi.cos());
            let d = [2.0 * s * c, 2.0 * s * s - 1.0];
            let e = [c - 0.5 * s * d[0], s - 0.5 * s * d[1]];
            best = best.min(((p.position[0] - e[0]).powi(2) + (p.position[1] - e[1]).powi(2)).sqrt());
        }
        println!(
            "  ({:+.5}, {:+.5})  {}  dist to envelope {:.1e}",
            p.position[0],
            p.position[1],
            p.kind.as_str(),
            best
        );
    }
    Ok(())
}
