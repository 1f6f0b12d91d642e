//! The Airy boundary layer across a fold caustic: exponentially damped in
//! the shadow, bounded on the caustic, two interfering geometrical-optics
//! waves deep in the illuminated zone.
//!
//! ```bash
//! cargo run --example airy_boundary_layer
//! ```

use seiche::airy::AirySolution;
use seiche::uniform::{evaluate_uniform_field, UniformAnsatz, Zone};
use seiche::Grid2D;

fn main() -> seiche::Result<()> {
    let k = 100.0f64;
    let k23 = k.powf(2.0 / 3.0);
    let grid = Grid2D::new(0.0, 1.0, -0.8, 1.0, 3, 361)?;
    let ansatz = UniformAnsatz::canonical_fold(grid.clone(), k)?;
    let airy = AirySolution::ai_branch(-1.32 * k23 - 1.0, 1.32 * k23 + 1.0)?;
    let field = evaluate_uniform_field(&ansatz, &airy)?;
    let zones = ansatz.zones();

    println!("canonical fold at k = {k}: caustic on y = 0, illuminated above");
    println!("{:>8}  {:>10}  {:>12}  zone", "y", "rho", "|u|");
    for j in (0..grid.ny).step_by(24) {
        let y = grid.y(j);
        let rho = ansatz.rho.get(1, j);
        let u = field.get(1, j).norm();
        let zone = match zones[grid.idx(1, j)] {
            Zone::Illuminated => "illuminated",
            Zone::Shadow => "shadow",
            Zone::Caustic => "caustic",
        };
        println!("{y:>8.3}  {rho:>10.4}  {u:>12.4e}  {zone}");
    }

    // the boundary layer has width ~ k^(-2/3): the first Airy peak sits
    // just inside the illuminated zone
    let mut best = (0.0, 0.0);
    for j in 0..grid.ny {
        let u = field.get(1, j).norm();
        if u > best.1 {
            best = (grid.y(j), u);
        }
    }
    println!(
        "\npeak |u| = {:.4} at y = {:.4} (layer width scale k^(-2/3) = {:.4})",
        best.1,
        best.0,
        k23.recip()
    );
    Ok(())
}
