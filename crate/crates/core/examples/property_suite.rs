//! The randomized property suite, and a planted bug it catches.
//!
//! Run with `cargo run --release --example property_suite`.

use sibson::verify::{run_property_suite, run_suite, MaxDims, Mutant, SuiteConfig};

fn main() {
    for r in run_property_suite(7, 50, MaxDims::default()) {
        println!(
            "{:<34} {:>3} instances, max violation {:.1e}{}",
            r.property_name,
            r.instances_tested,
            r.max_violation,
            if r.passed() { "" } else { "  FAILED" }
        );
    }

    let config = SuiteConfig {
        seed: 7,
        instances: 50,
        max_dims: MaxDims::default(),
        mutant: Some(Mutant::SibsonSignFlip),
    };
    let failing: Vec<_> = run_suite(&config, |_| true)
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| r.property_name)
        .collect();
    println!("\nwith the sign of I_alpha flipped, failing: {failing:?}");
}
