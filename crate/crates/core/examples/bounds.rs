//! Reverse-Hölder bounds on `E[f(X, Y)]` in every regime, and the event
//! probability lower bound.
//!
//! Run with `cargo run --example bounds`.

use sibson::bounds::{
    event_probability_lower_bound, table1_csv, table1_report, EventSet, FunctionOnJoint,
};
use sibson::closed_forms::erasure_joint;
use sibson::JointPmf;

fn main() -> sibson::Result<()> {
    let joint = JointPmf::new(vec![vec![0.3, 0.1, 0.1], vec![0.05, 0.15, 0.3]])?;
    let f = FunctionOnJoint::new(vec![vec![1.0, 0.4, 0.2], vec![0.3, 0.6, 1.0]])?;
    let rows = table1_report(&joint, &f, &[f64::NEG_INFINITY, -2.0, -0.5, 0.5, 2.0, f64::INFINITY])?;
    print!("{}", table1_csv(&rows)?);

    // Almost everything is erased: the bound on the full event is nearly tight.
    let bec = erasure_joint(0.98)?;
    let all = EventSet::from_fn(2, 3, |_, _| true);
    let r = event_probability_lower_bound(&bec, &all, -50.0)?;
    println!("\nP(E) = {:.4} >= {:.4} (slack {:.4})", r.lhs, r.bound, r.slack);
    Ok(())
}
