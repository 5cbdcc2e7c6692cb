//! Brute-force search over a simplex lattice never beats the closed-form
//! optimum, and its argmax approaches `Q*_Y` as the lattice refines.
//!
//! Run with `cargo run --release --example variational_grid`.

use sibson::verify::{random_instance, variational_verify};
use sibson::ZeroConvention;

fn main() -> sibson::Result<()> {
    let joint = random_instance(11, 3, 4)?;
    for resolution in [10, 20, 40, 80] {
        let r = variational_verify(&joint, -1.5, resolution, ZeroConvention::Strict)?;
        println!(
            "resolution {resolution:>3}: {:>6} points, gap {:.2e}, L1 to Q* {:.4}",
            r.points,
            r.gap,
            r.l1_to_optimal.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
