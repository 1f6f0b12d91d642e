//! The jump model for a bore running over a floor incline: Froude
//! classification and the surface elevation, exact versus first order.
//!
//! ```bash
//! cargo run --example bore_jump
//! ```

use seiche::bore::{elevation_exact, elevation_first_order, froude, BoreInput};

fn main() -> seiche::Result<()> {
    let (depth, g) = (1.0f64, 9.8f64);

    for u in [0.5, 1.0, 3.132, 6.0] {
        let c = (g * depth).sqrt();
        let regime = froude(u, c)?;
        println!("u = {u:>5.3}: F = {:.4} ({})", regime.froude, regime.tag.as_str());
    }
    println!();

    // tranquil flow depresses the surface over a rising floor; shooting
    // flow lifts it
    for (label, u) in [("tranquil", 1.0), ("shooting", 8.0)] {
        let input = BoreInput::new(depth, 0.01, u, g)?;
        let eps = elevation_first_order(&input)?;
        println!("{label} flow over a +0.01 incline: eps = {eps:+.6}");
    }
    println!();

    println!("delta        eps_exact        eps_first       |difference|");
    for delta in [1e-2, 1e-3, 1e-4] {
        let input = BoreInput::new(depth, delta, 1.0, g)?;
        let exact = elevation_exact(&input)?;
        let first = elevation_first_order(&input)?;
        println!(
            "{delta:<8.0e} {exact:>16.10e} {first:>16.10e} {:>12.3e}",
            (exact - first).abs()
        );
    }
    println!("(the difference shrinks ~ delta^2: the linearization is second-order accurate)");
    Ok(())
}
