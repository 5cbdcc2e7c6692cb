//! Maximal leakage and maximal-cost leakage, the two endpoint orders.
//!
//! Run with `cargo run --example leakage`.

use sibson::{
    joint_from_channel, maximal_cost_leakage, maximal_leakage, sibson_mi, Channel, Pmf,
    ZeroConvention,
};

fn main() -> sibson::Result<()> {
    let uniform = Pmf::uniform(2)?;
    for delta in [0.0, 0.1, 0.25, 0.5] {
        let joint = joint_from_channel(&uniform, &Channel::bsc(delta)?)?;
        let near = sibson_mi(&joint, -1e4, ZeroConvention::Strict)?.value;
        println!(
            "BSC({delta}): leakage {:.6}  cost leakage {:.6}  I at -1e4 {:.6}",
            maximal_leakage(&joint),
            maximal_cost_leakage(&joint),
            near,
        );
    }
    Ok(())
}
