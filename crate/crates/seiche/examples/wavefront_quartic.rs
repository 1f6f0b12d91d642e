//! Wavefronts of the quartic source y = x^4 evolving along the normals:
//! the outward front never focuses, the inward one develops singularities
//! at a closed-form time per sample.
//!
//! ```bash
//! cargo run --example wavefront_quartic
//! ```

use seiche::wavefront::{
    detect_front_singularities, evolve, first_singular_time, singular_times, Direction,
    SourceCurve,
};

fn main() -> seiche::Result<()> {
    let src = SourceCurve::quartic(-2.0, 2.0)?;

    println!("inward singular times t(x) = [1 + (4x^3)^2]^(3/2) / (12 x^2):");
    let samples = singular_times(&src, Direction::Plus, (0.25, 2.0), 8)?;
    for (x, t) in &samples {
        let t = t.expect("the inward quartic front always focuses");
        let d = 1.0 + (4.0 * x * x * x).powi(2);
        let closed = d.powf(1.5) / (12.0 * x * x);
        println!("  x = {x:>5.2}: t = {t:>12.6} (closed form {closed:>12.6})");
    }

    let outward = singular_times(&src, Direction::Minus, (0.25, 2.0), 64)?;
    println!(
        "outward front: {} of {} samples ever degenerate",
        outward.iter().filter(|(_, t)| t.is_some()).count(),
        outward.len()
    );

    let (x_star, t_star) = first_singular_time(&src, Direction::Plus, (0.2, 2.0), 400)?
        .expect("inward front focuses");
    println!("\nearliest focus at x = {x_star:.6}, t = {t_star:.6}");
    println!(
        "stationarity check 56 x^6 = {:.6} (exactly 1 at the minimum)",
        56.0 * x_star.powi(6)
    );

    // a front just below and a front at the first singular time
    for t in [0.95 * t_star, t_star] {
        let front = evolve(&src, t, Direction::Plus, 401)?;
        let singular = detect_front_singularities(&front, 1e-3);
        println!(
            "front at t = {t:.4}: {} singular of {} samples",
            singular.len(),
            front.curve.len()
        );
    }
    Ok(())
}
