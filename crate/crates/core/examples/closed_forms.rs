//! Closed forms for the binary symmetric, erasure and Gaussian channels,
//! checked against the generic discrete computation.
//!
//! Run with `cargo run --release --example closed_forms`.

use sibson::closed_forms::{
    bsc_joint, bsc_sibson, erasure_joint, erasure_sibson_xy, erasure_sibson_yx, gaussian_sibson,
    quantized_gaussian_joint, GaussianPair,
};
use sibson::{sibson_mi, ZeroConvention};

fn main() -> sibson::Result<()> {
    let alpha = -2.0;

    let bsc = bsc_joint(0.1)?;
    println!(
        "BSC(0.1):      closed {:.10}  discrete {:.10}",
        bsc_sibson(0.1, alpha)?,
        sibson_mi(&bsc, alpha, ZeroConvention::Strict)?.value
    );

    // The erasure formulas drop the zero-probability cells.
    let conv = ZeroConvention::SupportRestricted;
    let bits = std::f64::consts::LN_2;
    let bec = erasure_joint(0.3)?;
    println!(
        "BEC(0.3) bits: I(X,Y) closed {:.6} discrete {:.6}; I(Y,X) closed {:.6} discrete {:.6}",
        erasure_sibson_xy(0.3, alpha)? / bits,
        sibson_mi(&bec, alpha, conv)?.value / bits,
        erasure_sibson_yx(0.3, alpha)? / bits,
        sibson_mi(&bec.transpose(), alpha, conv)?.value / bits,
    );

    let g = GaussianPair::new(1.0, 4.0)?;
    println!("Gaussian: valid for alpha > {}", g.validity_lower());
    let quantized = quantized_gaussian_joint(g, 1 << 10)?;
    for alpha in [-0.5, -1.0, -2.0] {
        println!(
            "  alpha {alpha:>4}: closed {:.6}  quantized {:.6}",
            gaussian_sibson(g, alpha)?,
            sibson_mi(&quantized, alpha, ZeroConvention::Strict)?.value
        );
    }
    match gaussian_sibson(g, -4.0) {
        Err(e) => println!("  alpha   -4: {e}"),
        Ok(v) => println!("  alpha   -4: unexpectedly {v}"),
    }
    Ok(())
}
