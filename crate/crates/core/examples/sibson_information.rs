//! Sibson's α-mutual information across orders, with the optimal output
//! measure `Q*_Y` that attains it.
//!
//! Run with `cargo run --example sibson_information`.

use sibson::{joint_from_channel, sibson_mi, Channel, Pmf, ZeroConvention};

fn main() -> sibson::Result<()> {
    let p_x = Pmf::new(vec![0.2, 0.5, 0.3])?;
    let channel = Channel::new(vec![
        vec![0.7, 0.2, 0.1],
        vec![0.1, 0.8, 0.1],
        vec![0.3, 0.3, 0.4],
    ])?;
    let joint = joint_from_channel(&p_x, &channel)?;

    println!("{:>8}  {:>10}  Q*_Y", "alpha", "I_alpha");
    for alpha in [f64::NEG_INFINITY, -10.0, -2.0, -0.5, 0.5, 1.0, 2.0, f64::INFINITY] {
        let r = sibson_mi(&joint, alpha, ZeroConvention::Strict)?;
        let q = r
            .optimal_q
            .map(|q| format!("{:.4?}", q.probs()))
            .unwrap_or_else(|| "-".into());
        println!("{alpha:>8}  {:>10.6}  {q}", r.value);
    }
    Ok(())
}
