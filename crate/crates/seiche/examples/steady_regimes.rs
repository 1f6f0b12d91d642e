//! Type classification of a steady shallow flow across its sonic circle,
//! plus the flow energy functional.
//!
//! ```bash
//! cargo run --example steady_regimes
//! ```

use seiche::field::VectorField2D;
use seiche::steady::{classify_type, energy_functional, residuals, FlowType, SteadyFlowConfig};
use seiche::Grid2D;

fn main() -> seiche::Result<()> {
    // u = (x, y) has speed-squared Q = r^2; with C = 3 the sonic set
    // Q = c^2 = (C - Q)/2 is the unit circle
    let grid = Grid2D::square(-1.2, 1.2, 201)?;
    let flow = VectorField2D::from_fn(grid.clone(), |x, y| (x, y))?;
    let cfg = SteadyFlowConfig::new(3.0, 9.8)?;

    let (r_continuity, r_curl) = residuals(&flow, &cfg)?;
    println!(
        "residuals of the radial field: |continuity| <= {:.2e}, |curl| <= {:.2e}",
        r_continuity.max_abs(),
        r_curl.max_abs()
    );

    let map = classify_type(&flow, &cfg)?;
    let mut counts = [0usize; 3];
    for t in map.tags() {
        match t {
            FlowType::Elliptic => counts[0] += 1,
            FlowType::Parabolic => counts[1] += 1,
            FlowType::Hyperbolic => counts[2] += 1,
        }
    }
    println!(
        "node tags: {} elliptic (tranquil), {} parabolic, {} hyperbolic (shooting)",
        counts[0], counts[1], counts[2]
    );
    let expected = std::f64::consts::PI / (2.4 * 2.4);
    println!(
        "elliptic fraction {:.4} vs exact disc-area fraction {expected:.4}",
        counts[0] as f64 / map.tags().len() as f64
    );

    let energy = energy_functional(&flow, &cfg, grid.full_window())?;
    println!("flow energy over the square: {energy:.6}");
    Ok(())
}
