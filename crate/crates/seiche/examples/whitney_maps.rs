//! The two stable singularities of plane-to-plane maps, detected by rank of
//! the derivative map and classified by directional derivatives.
//!
//! ```bash
//! cargo run --example whitney_maps
//! ```

use seiche::rays::{classify_singularity, derivative_map, ClassifyOptions};

fn main() -> seiche::Result<()> {
    let fold = |q: [f64; 2]| [q[0], q[1] * q[1]];
    let pleat = |q: [f64; 2]| [q[0], q[0] * q[1] - q[1] * q[1] * q[1]];
    let opts = ClassifyOptions::default();

    println!("map (x, y) -> (x, y^2):");
    for point in [[0.0, 1.0], [0.0, 0.0], [2.0, 0.0]] {
        let jac = derivative_map(&fold, point, 1e-5)?;
        print!(
            "  at ({:>4.1}, {:>4.1}): rank {} |det| = {:.1e}",
            point[0], point[1], jac.rank, jac.det.abs()
        );
        if jac.rank == 1 {
            println!("  -> {}", classify_singularity(&fold, point, &opts)?.as_str());
        } else {
            println!("  -> regular");
        }
    }

    println!("map (x, y) -> (x, xy - y^3): rank drops along the parabola x = 3y^2");
    for y in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let point = [3.0 * y * y, y];
        let kind = classify_singularity(&pleat, point, &opts)?;
        println!(
            "  at ({:>4.2}, {:>4.2}): {}",
            point[0],
            point[1],
            kind.as_str()
        );
    }
    println!("(every point of the parabola folds, except the pleat vertex at the origin)");
    Ok(())
}
