//! Negative-order divergences are not concave in their second argument.
//!
//! Run with `cargo run --example non_concavity`.

use sibson::{renyi_divergence, skew_symmetry_check, Pmf, ZeroConvention};

fn main() -> sibson::Result<()> {
    let alpha = -2.0;
    let lambda = 0.4;
    let nu = Pmf::new(vec![0.13, 0.87])?;
    let mu1 = Pmf::new(vec![0.32, 0.68])?;
    let mu2 = Pmf::uniform(2)?;
    let mix = Pmf::mix(lambda, &mu1, &mu2)?;

    let d = |q: &Pmf| renyi_divergence(&nu, q, alpha, ZeroConvention::Strict);
    let (d1, d2, dmix) = (d(&mu1)?, d(&mu2)?, d(&mix)?);
    let chord = lambda * d1 + (1.0 - lambda) * d2;

    println!("D(nu||mu1)            = {d1:.4}");
    println!("D(nu||mu2)            = {d2:.4}");
    println!("D(nu||mix)            = {dmix:.4}");
    println!("chord of divergences  = {chord:.4}");
    println!("concavity would need D(nu||mix) >= chord: {}", dmix >= chord);

    let (lhs, rhs) = skew_symmetry_check(&nu, &mu1, alpha)?;
    println!("skew symmetry: {lhs:.6} = {rhs:.6}");
    Ok(())
}
