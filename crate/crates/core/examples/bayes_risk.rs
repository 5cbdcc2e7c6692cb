//! Exact Bayes risk against its moment and small-ball lower bounds.
//!
//! Run with `cargo run --example bayes_risk`.

use sibson::bayes::{risk_report, BayesModel, LossMatrix};
use sibson::{Channel, Pmf};

fn main() -> sibson::Result<()> {
    // Five-point parameter, two noisy looks at it, squared-error loss.
    let points = [0.0, 0.25, 0.5, 0.75, 1.0];
    let noise = Channel::new(
        (0..5)
            .map(|w| {
                (0..5)
                    .map(|x| if w == x { 0.6 } else { 0.1 })
                    .collect()
            })
            .collect(),
    )?;
    let model = BayesModel::new(
        Pmf::uniform(5)?,
        noise.iid_observations(2)?,
        LossMatrix::squared(&points)?,
    )?;

    let report = risk_report(&model, &[-0.5, -2.0, -8.0, f64::NEG_INFINITY], &[0.01, 0.07, 0.2])?;
    print!("{}", report.to_csv()?);
    println!("\nexact risk {:.5}, best bound {:.5}", report.exact_risk, report.best_bound);
    Ok(())
}
