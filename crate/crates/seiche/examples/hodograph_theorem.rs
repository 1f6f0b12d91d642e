//! Numerical check that the hodograph Jacobian of the mixed-type system is
//! strictly negative inside the elliptic region for nonconstant data.
//!
//! ```bash
//! cargo run --example hodograph_theorem
//! ```

use seiche::hodograph::{
    elliptic_region_test, verify_theorem_numerically, Disc, FCoefficient, HodographPoint,
    jacobian_eq_pair, SolveOptions,
};
use seiche::Grid2D;

fn main() -> seiche::Result<()> {
    // pointwise: both routes to J agree, and J < 0 in the elliptic interior
    let f = FCoefficient::Unity;
    let p = HodographPoint::consistent(0.5, 0.0, 1.0, 0.0, &f)?;
    let pair = jacobian_eq_pair(&p, &f)?;
    println!(
        "sample point (u, v) = (0.5, 0): J = {:.6} (routes agree to {:.1e})",
        pair.value(),
        pair.rel_disagreement()
    );
    println!(
        "elliptic region test: (0.5, 0) with f = 1 -> {}, (2, 0) with the quartic f -> {}",
        elliptic_region_test(0.5, 0.0, &FCoefficient::Unity),
        elliptic_region_test(2.0, 0.0, &FCoefficient::Quartic),
    );
    println!();

    // field-level: solve the system on a disc with x = u on the boundary
    for (f, grid, disc) in [
        (
            FCoefficient::Unity,
            Grid2D::square(-0.9, 0.9, 101)?,
            Disc { cu: 0.0, cv: 0.0, radius: 0.8 },
        ),
        (
            FCoefficient::Quartic,
            Grid2D::new(1.6, 2.4, -0.4, 0.4, 81, 81)?,
            Disc { cu: 2.0, cv: 0.0, radius: 0.3 },
        ),
    ] {
        let report = verify_theorem_numerically(&f, &grid, disc, |u, _| u, SolveOptions::default())?;
        println!(
            "f = {:<8} disc r = {:.1}: {} interior nodes, J < 0 at {} ({} near zero)",
            f.name(),
            disc.radius,
            report.interior_nodes,
            report.negative,
            report.near_zero
        );
        println!(
            "    J in [{:.4}, {:.4}], route disagreement <= {:.1e}, {} relaxation sweeps",
            report.min_j, report.max_j, report.max_rel_disagreement, report.iterations
        );
    }
    Ok(())
}
