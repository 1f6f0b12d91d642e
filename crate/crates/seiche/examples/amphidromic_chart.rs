//! A synthetic rotary tide: amphidromic points carry quantized winding,
//! cotidal lines radiate from them, and the tidal current circulates.
//!
//! ```bash
//! cargo run --example amphidromic_chart
//! ```

use seiche::phase::{
    cotidal_lines, current, decompose, detect_amphidromic, synthetic_vortex_field, winding_number,
};
use seiche::Grid2D;

fn main() -> seiche::Result<()> {
    let grid = Grid2D::square(-3.0, 3.0, 151)?;
    let centers = [([-1.0, -0.6], 1), ([1.1, 0.4], 1), ([0.2, 1.4], -1)];
    let field = synthetic_vortex_field(grid, &centers, 2.0)?;
    let dec = decompose(&field, None)?;

    let points = detect_amphidromic(&dec);
    println!("detected {} amphidromic points:", points.len());
    for p in &points {
        println!(
            "  ({:+.3}, {:+.3})  charge {:+}  amplitude {:.2e}",
            p.position[0], p.position[1], p.charge, p.amplitude
        );
    }

    // the boundary winding equals the enclosed total charge
    let n = dec.grid().nx - 1;
    let mut boundary = Vec::new();
    for i in 2..n - 1 {
        boundary.push((i, 2));
    }
    for j in 2..n - 1 {
        boundary.push((n - 1, j));
    }
    for i in (3..=n - 1).rev() {
        boundary.push((i, n - 1));
    }
    for j in (3..=n - 1).rev() {
        boundary.push((2, j));
    }
    let total: i32 = points.iter().map(|p| p.charge).sum();
    let loop_charge = winding_number(&dec, &boundary)?;
    println!("sum of charges {total:+} = boundary loop winding {loop_charge:+}");

    let chart = cotidal_lines(&dec, &[0.0, std::f64::consts::FRAC_PI_2])?;
    println!(
        "cotidal chart: {} contour chains at 2 phases",
        chart.curves.len()
    );

    let j = current(&dec)?;
    let (ju, jv) = j.get(30, 75);
    println!(
        "tidal current at a probe node: j = ({ju:+.4}, {jv:+.4}) -- circulating about the nearest point"
    );
    Ok(())
}
