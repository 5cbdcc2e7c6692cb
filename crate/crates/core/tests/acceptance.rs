//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed:
//! `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sibson::bayes::{bayes_risk_exact, risk_lower_bound_cor5, risk_report, BayesModel, LossMatrix};
use sibson::bounds::{table1_report, BoundDirection, FunctionOnJoint};
use sibson::closed_forms::{
    bsc_joint, erasure_joint, gaussian_sibson, quantized_gaussian_joint, GaussianPair,
};
use sibson::verify::{random_instance, run_suite, variational_verify, MaxDims, SuiteConfig};
use sibson::{
    maximal_cost_leakage, renyi_divergence, sibson_mi, Channel, Error, Pmf, ZeroConvention,
};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// `1/(α−1) · ln Σ p^α q^{1−α}` term by term.
fn naive_renyi(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let s: f64 = p
        .iter()
        .zip(q)
        .map(|(a, b)| a.powf(alpha) * b.powf(1.0 - alpha))
        .sum();
    s.ln() / (alpha - 1.0)
}

fn counterexample() -> Outcome {
    let nu = Pmf::new(vec![0.13, 0.87]).unwrap();
    let mu1 = Pmf::new(vec![0.32, 0.68]).unwrap();
    let mu2 = Pmf::new(vec![0.5, 0.5]).unwrap();
    let (lambda, a, conv) = (0.4, -2.0, ZeroConvention::Strict);

    let start = Instant::now();
    let mix = Pmf::mix(lambda, &mu1, &mu2).unwrap();
    let d1 = renyi_divergence(&nu, &mu1, a, conv).unwrap();
    let d2 = renyi_divergence(&nu, &mu2, a, conv).unwrap();
    let dmix = renyi_divergence(&nu, &mix, a, conv).unwrap();
    let chord = lambda * d1 + (1.0 - lambda) * d2;
    let elapsed = start.elapsed();

    let printed = [(d1, -0.2855), (d2, -0.6744), (dmix, -0.5287), (chord, -0.5188)];
    for (got, want) in printed {
        check((got - want).abs() <= 5e-4, format!("{got:.6} vs printed {want}"))?;
    }
    let naive = [
        naive_renyi(nu.probs(), mu1.probs(), a),
        naive_renyi(nu.probs(), mu2.probs(), a),
        naive_renyi(nu.probs(), mix.probs(), a),
    ];
    for (got, want) in [d1, d2, dmix].iter().zip(naive) {
        check((got - want).abs() < 1e-12, format!("{got} disagrees with term-by-term {want}"))?;
    }
    check(dmix < chord, "mixture value should fall below the chord")?;
    check(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "D={d1:.6}, {d2:.6}, mixture {dmix:.6} < chord {chord:.6} in {elapsed:?}"
    ))
}

fn bsc_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=9 {
        let delta = 0.05 * k as f64;
        for a in [-0.5, -1.0, -2.0, -5.0] {
            let mi = sibson_mi(&bsc_joint(delta).unwrap(), a, ZeroConvention::Strict)
                .unwrap()
                .value;
            let want = -naive_renyi(&[delta, 1.0 - delta], &[0.5, 0.5], a);
            worst = worst.max((mi - want).abs());
        }
    }
    check(worst <= 1e-10, format!("max deviation {worst:e}"))?;
    Ok(format!("36 cases, max deviation {worst:.1e}"))
}

fn erasure_bits_xy(d: f64, a: f64) -> f64 {
    -a / (a - 1.0) * (d + (1.0 - d) * 2f64.powf((a - 1.0) / a)).log2()
}

fn erasure_bits_yx(d: f64, a: f64) -> f64 {
    -1.0 / (a - 1.0) * (d + (1.0 - d) * 2f64.powf(a - 1.0)).log2()
}

fn erasure() -> Outcome {
    let restricted = ZeroConvention::SupportRestricted;
    let mut worst: f64 = 0.0;
    for k in 1..=9 {
        let delta = 0.1 * k as f64;
        let j = erasure_joint(delta).unwrap();
        for a in [-0.5, -2.0, -10.0] {
            let xy = sibson_mi(&j, a, restricted).unwrap().value / std::f64::consts::LN_2;
            let yx = sibson_mi(&j.transpose(), a, restricted).unwrap().value
                / std::f64::consts::LN_2;
            worst = worst
                .max((xy - erasure_bits_xy(delta, a)).abs())
                .max((yx - erasure_bits_yx(delta, a)).abs());
        }
    }
    check(worst <= 1e-10, format!("printed formulas off by {worst:e}"))?;

    let mut limit: f64 = 0.0;
    for k in 1..=9 {
        let delta = 0.1 * k as f64;
        let j = erasure_joint(delta).unwrap();
        let strict = sibson_mi(&j, -1e4, ZeroConvention::Strict).unwrap().value;
        limit = limit.max((strict + delta.ln()).abs());
        let cost = maximal_cost_leakage(&j);
        check((cost + delta.ln()).abs() < 1e-12, format!("cost leakage {cost} at {delta}"))?;
    }
    check(limit <= 1e-3, format!("strict limit off by {limit:e}"))?;
    Ok(format!(
        "base-2 formulas within {worst:.1e}; strict α=-1e4 within {limit:.1e} of -ln δ"
    ))
}

fn gaussian() -> Outcome {
    let start = Instant::now();
    let g = GaussianPair::new(1.0, 4.0).unwrap();
    for k in 1..40 {
        let a = -0.1 * k as f64;
        let want = -0.5 * (1.0 + a / 4.0).ln();
        let got = gaussian_sibson(g, a).unwrap();
        check((got - want).abs() < 1e-14, format!("closed form at {a}: {got} vs {want}"))?;
    }
    for a in [-4.0, -5.0] {
        check(
            matches!(
                gaussian_sibson(g, a),
                Err(Error::AlphaOutOfValidityRange { .. })
            ),
            format!("no validity error at {a}"),
        )?;
    }
    let joint = quantized_gaussian_joint(g, 1 << 12).unwrap();
    let mut worst: f64 = 0.0;
    for a in [-0.5, -1.0, -2.0] {
        let disc = sibson_mi(&joint, a, ZeroConvention::Strict).unwrap().value;
        worst = worst.max((disc - gaussian_sibson(g, a).unwrap()).abs());
    }
    let elapsed = start.elapsed();
    check(worst <= 5e-3, format!("quantized joint off by {worst:e}"))?;
    check(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("4096 bins within {worst:.1e} in {elapsed:.2?}"))
}

fn variational() -> Outcome {
    let start = Instant::now();
    let orders = [-0.5, -1.0, -2.0, -5.0];
    let (mut worst_excess, mut worst_gap, mut worst_l1) = (f64::NEG_INFINITY, 0.0f64, 0.0f64);
    for seed in 0..50u64 {
        let (n_x, n_y) = (2 + (seed % 2) as usize, 2 + (seed % 3) as usize);
        let j = random_instance(1000 + seed, n_x, n_y).unwrap();
        let a = orders[seed as usize % orders.len()];
        let r = variational_verify(&j, a, 80, ZeroConvention::Strict).unwrap();
        worst_excess = worst_excess.max(r.grid_best + r.closed_form);
        worst_gap = worst_gap.max(r.gap);
        worst_l1 = worst_l1.max(r.l1_to_optimal.unwrap());
    }
    let elapsed = start.elapsed();
    check(worst_excess <= 1e-9, format!("lattice exceeded -I by {worst_excess:e}"))?;
    check(worst_l1 <= 0.1, format!("argmax L1 distance {worst_l1}"))?;
    check(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!(
        "50 joints, max excess {worst_excess:.1e}, largest gap {worst_gap:.1e}, L1 ≤ {worst_l1:.3} in {elapsed:.2?}"
    ))
}

fn suite(prefixes: &[&str], names: &[&str], instances: usize) -> Result<usize, String> {
    let config = SuiteConfig {
        seed: 7,
        instances,
        max_dims: MaxDims::default(),
        mutant: None,
    };
    let reports = run_suite(&config, |n| {
        names.contains(&n) || prefixes.iter().any(|p| n.starts_with(p))
    });
    for r in &reports {
        check(
            r.passed(),
            format!(
                "{}: {} violations, max {:e}",
                r.property_name,
                r.violations.len(),
                r.max_violation
            ),
        )?;
        check(r.tolerance <= 1e-10, format!("{} tolerance too loose", r.property_name))?;
    }
    Ok(reports.len())
}

fn properties() -> Outcome {
    let start = Instant::now();
    let n = suite(
        &["renyi_"],
        &[
            "sibson_nonnegativity",
            "sibson_order_monotonicity",
            "sibson_leakage_cap",
            "sibson_dpi",
            "sibson_channel_convexity",
        ],
        200,
    )?;
    // asymmetry witness on the erasure channel
    let j = erasure_joint(0.2).unwrap();
    let conv = ZeroConvention::SupportRestricted;
    let xy = sibson_mi(&j, -2.0, conv).unwrap().value;
    let yx = sibson_mi(&j.transpose(), -2.0, conv).unwrap().value;
    check((xy - yx).abs() > 1e-3, "erasure values are not asymmetric")?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{n} properties x 200 instances clean in {elapsed:.2?}"))
}

fn random_function(rng: &mut ChaCha8Rng, n_x: usize, n_y: usize) -> FunctionOnJoint {
    FunctionOnJoint::new(
        (0..n_x)
            .map(|_| (0..n_y).map(|_| rng.random_range(0.0..2.0)).collect())
            .collect(),
    )
    .unwrap()
}

fn bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    type Draw = fn(&mut ChaCha8Rng) -> f64;
    let regimes: [(Draw, BoundDirection); 3] = [
        (|r| -r.random_range(0.05..20.0), BoundDirection::AtLeast),
        (|r| r.random_range(0.05..0.95), BoundDirection::AtLeast),
        (|r| r.random_range(1.05..20.0), BoundDirection::AtMost),
    ];
    let mut worst = f64::INFINITY;
    for (sample, direction) in regimes {
        for i in 0..200u64 {
            let (n_x, n_y) = (rng.random_range(2..=4), rng.random_range(2..=4));
            let j = random_instance(5000 + i, n_x, n_y).unwrap();
            let f = random_function(&mut rng, n_x, n_y);
            let a = sample(&mut rng);
            let r = &table1_report(&j, &f, &[a]).unwrap()[0];
            check(r.direction == direction, format!("wrong direction at α={a}"))?;
            worst = worst.min(r.slack);
        }
    }
    check(worst >= -1e-10, format!("per-regime slack {worst:e}"))?;
    let n = suite(
        &[],
        &[
            "bounds_reverse_holder",
            "bounds_functional_lower",
            "bounds_event_exhaustive",
            "bounds_functional_upper",
            "bounds_direction",
        ],
        200,
    )?;
    Ok(format!(
        "600 per-regime cases (min slack {worst:.1e}); {n} bound properties incl. all 64 events x 4 orders"
    ))
}

fn bayes() -> Outcome {
    suite(&[], &["bayes_soundness", "bayes_engine_exactness"], 100)?;
    let m = 4;
    let channel = Channel::constant(m, &Pmf::new(vec![0.2, 0.3, 0.5]).unwrap()).unwrap();
    let model =
        BayesModel::new(Pmf::uniform(m).unwrap(), channel, LossMatrix::zero_one(m).unwrap())
            .unwrap();
    let risk = bayes_risk_exact(&model).0;
    let bound = risk_lower_bound_cor5(&model, f64::NEG_INFINITY).unwrap();
    let tightness = risk_report(&model, &[f64::NEG_INFINITY], &[0.5]).unwrap().tightness;
    check((risk - 0.75).abs() < 1e-15, format!("risk {risk}"))?;
    check((tightness - 1.0).abs() < 1e-12, format!("tightness {tightness}, bound {bound}"))?;
    Ok(format!(
        "100 models sound, engine exact; uninformative tightness {tightness}"
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 counterexample values", counterexample),
        ("2 binary symmetric identity", bsc_identity),
        ("3 erasure formulas and limit", erasure),
        ("4 gaussian closed form", gaussian),
        ("5 variational characterization", variational),
        ("6 property suite", properties),
        ("7 bound suite", bounds),
        ("8 bayes risk soundness", bayes),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
