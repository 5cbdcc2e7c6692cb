//! Closed-form values of `I_α` for negative orders on three standard models,
//! plus builders for the matching discrete joints.

use libm::erfc;
use std::f64::consts::{LN_2, SQRT_2};

use crate::error::{Error, Result};
use crate::order::ExtReal;
use crate::prob::{joint_from_channel, Channel, JointPmf, Pmf};
use crate::renyi::binary_renyi_divergence;

fn require_negative_finite(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha < 0.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha,
            expected: "finite and negative",
        })
    }
}

/// Uniform binary input through a binary symmetric channel with crossover `delta`.
pub fn bsc_joint(delta: f64) -> Result<JointPmf> {
    joint_from_channel(&Pmf::uniform(2)?, &Channel::bsc(delta)?)
}

/// Uniform binary input through a binary erasure channel: the input is kept
/// with probability `1 − delta` and replaced by the erasure symbol (index 2)
/// otherwise.
pub fn erasure_joint(delta: f64) -> Result<JointPmf> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "erasure probability {delta} is outside [0, 1]"
        )));
    }
    let ch = Channel::new(vec![
        vec![1.0 - delta, 0.0, delta],
        vec![0.0, 1.0 - delta, delta],
    ])?;
    joint_from_channel(&Pmf::uniform(2)?, &ch)
}

/// `I_α(X, Y) = I_α(Y, X) = −d_α(δ‖1/2)` for the binary symmetric channel.
pub fn bsc_sibson(delta: f64, alpha: f64) -> Result<ExtReal> {
    require_negative_finite(alpha)?;
    Ok(-binary_renyi_divergence(delta, 0.5, alpha)?)
}

fn check_erasure(delta: f64, alpha: f64) -> Result<()> {
    require_negative_finite(alpha)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "erasure probability {delta} is outside (0, 1]"
        )));
    }
    Ok(())
}

/// `−α/(α−1) · log₂(δ + (1−δ)·2^{(α−1)/α})`, in bits.
fn erasure_xy_bits(delta: f64, alpha: f64) -> f64 {
    -alpha / (alpha - 1.0) * (delta + (1.0 - delta) * 2f64.powf((alpha - 1.0) / alpha)).log2()
}

/// `−1/(α−1) · log₂(δ + (1−δ)·2^{α−1})`, in bits.
fn erasure_yx_bits(delta: f64, alpha: f64) -> f64 {
    -1.0 / (alpha - 1.0) * (delta + (1.0 - delta) * 2f64.powf(alpha - 1.0)).log2()
}

/// Erasure-channel `I_α(X, Y)` in nats, as obtained when the sums skip
/// zero-probability terms ([`crate::ZeroConvention::SupportRestricted`]).
pub fn erasure_sibson_xy(delta: f64, alpha: f64) -> Result<f64> {
    check_erasure(delta, alpha)?;
    Ok(erasure_xy_bits(delta, alpha) * LN_2)
}

/// Erasure-channel `I_α(Y, X)` in nats, support-restricted reading.
pub fn erasure_sibson_yx(delta: f64, alpha: f64) -> Result<f64> {
    check_erasure(delta, alpha)?;
    Ok(erasure_yx_bits(delta, alpha) * LN_2)
}

/// Signal and noise variances of the additive Gaussian channel `Y = X + N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPair {
    var_x: f64,
    var_n: f64,
}

impl GaussianPair {
    pub fn new(var_x: f64, var_n: f64) -> Result<Self> {
        if !(var_x > 0.0 && var_x.is_finite() && var_n > 0.0 && var_n.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "variances must be positive and finite (got {var_x}, {var_n})"
            )));
        }
        Ok(GaussianPair { var_x, var_n })
    }

    pub fn var_x(&self) -> f64 {
        self.var_x
    }

    pub fn var_n(&self) -> f64 {
        self.var_n
    }

    /// Lower end of the order interval where the closed form holds.
    pub fn validity_lower(&self) -> f64 {
        -self.var_n / self.var_x
    }
}

/// `I_α(X, X+N) = −½ ln(1 + α σ²_X/σ²_N)` for `−σ²_N/σ²_X < α < 0`.
pub fn gaussian_sibson(g: GaussianPair, alpha: f64) -> Result<f64> {
    let lower = g.validity_lower();
    if !(alpha > lower && alpha < 0.0) {
        return Err(Error::AlphaOutOfValidityRange { alpha, lower });
    }
    Ok(-0.5 * (1.0 + alpha * g.var_x / g.var_n).ln())
}

/// Upper tail `P(Z > z)` of a standard normal.
fn normal_upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

/// `P(Z > |z|)`, the smaller of the two tails at `z`.
fn small_tail(z: f64) -> f64 {
    normal_upper_tail(z.abs())
}

/// `P(a < Z ≤ b)` from the small tails `ta`, `tb` at the endpoints, combined
/// on whichever side keeps the subtraction free of cancellation.
fn mass_from_tails(a: f64, b: f64, ta: f64, tb: f64) -> f64 {
    if a >= 0.0 {
        ta - tb
    } else if b <= 0.0 {
        tb - ta
    } else {
        1.0 - ta - tb
    }
}

/// `P(a < Z ≤ b)` for a standard normal.
fn normal_interval_mass(a: f64, b: f64) -> f64 {
    mass_from_tails(a, b, small_tail(a), small_tail(b))
}

/// Bin edges for `bins` equal-width cells over `±span` with the outer cells
/// extended to ±∞, plus the midpoints of the finite cells.
fn binning(span: f64, bins: usize) -> (Vec<f64>, Vec<f64>) {
    let width = 2.0 * span / bins as f64;
    let mut edges: Vec<f64> = (0..=bins).map(|i| -span + i as f64 * width).collect();
    let centers = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    edges[0] = f64::NEG_INFINITY;
    edges[bins] = f64::INFINITY;
    (edges, centers)
}

/// Discretizes `(X, X+N)`: `X` into `bins` cells over `±8σ_X`, the output
/// into `bins` cells over `±8σ_Y` with `σ²_Y = σ²_X + σ²_N`. Cell masses are
/// normal CDF differences, the outer cells absorb the tails, and each input
/// cell is represented by its midpoint.
pub fn quantized_gaussian_joint(g: GaussianPair, bins: usize) -> Result<JointPmf> {
    if bins < 2 {
        return Err(Error::InvalidParameter("need at least two bins".into()));
    }
    let (sx, sn) = (g.var_x.sqrt(), g.var_n.sqrt());
    let sy = (g.var_x + g.var_n).sqrt();
    let (x_edges, x_centers) = binning(8.0 * sx, bins);
    let p_x: Vec<f64> = x_edges
        .windows(2)
        .map(|w| normal_interval_mass(w[0] / sx, w[1] / sx))
        .collect();
    let (y_edges, _) = binning(8.0 * sy, bins);
    let mut rows = Vec::with_capacity(bins * bins);
    let mut z = vec![0.0; y_edges.len()];
    let mut tails = vec![0.0; y_edges.len()];
    for &c in &x_centers {
        for (i, &e) in y_edges.iter().enumerate() {
            z[i] = (e - c) / sn;
            tails[i] = small_tail(z[i]);
        }
        rows.extend((0..bins).map(|i| mass_from_tails(z[i], z[i + 1], tails[i], tails[i + 1])));
    }
    let channel = Channel::from_flat(bins, bins, rows)?;
    joint_from_channel(&Pmf::new(p_x)?, &channel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::ZeroConvention;
    use crate::sibson::sibson_mi;

    #[test]
    fn bsc_cases() {
        assert!(bsc_sibson(0.5, -2.0).unwrap().abs() < 1e-15);
        let general = sibson_mi(&bsc_joint(0.1).unwrap(), -2.0, ZeroConvention::Strict).unwrap();
        assert!((bsc_sibson(0.1, -2.0).unwrap() - general.value).abs() < 1e-12);
        assert_eq!(bsc_sibson(0.0, -2.0).unwrap(), f64::INFINITY);
        let strict = sibson_mi(&bsc_joint(0.0).unwrap(), -2.0, ZeroConvention::Strict).unwrap();
        assert_eq!(strict.value, f64::INFINITY);
        assert!(bsc_sibson(0.1, 0.5).is_err());
        assert!(bsc_sibson(0.1, f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn erasure_cases() {
        for a in [-0.5, -2.0, -10.0] {
            assert!(erasure_sibson_xy(1.0, a).unwrap().abs() < 1e-15);
            assert!(erasure_sibson_yx(1.0, a).unwrap().abs() < 1e-15);
        }
        let xy = erasure_sibson_xy(0.2, -2.0).unwrap();
        let yx = erasure_sibson_yx(0.2, -2.0).unwrap();
        assert!((xy - yx).abs() > 1e-3);
        let j = erasure_joint(0.2).unwrap();
        let conv = ZeroConvention::SupportRestricted;
        assert!((sibson_mi(&j, -2.0, conv).unwrap().value - xy).abs() < 1e-12);
        assert!((sibson_mi(&j.transpose(), -2.0, conv).unwrap().value - yx).abs() < 1e-12);
        assert!(erasure_sibson_xy(0.0, -2.0).is_err());
        assert!(erasure_sibson_yx(0.2, 2.0).is_err());
    }

    #[test]
    fn gaussian_cases() {
        let unit = GaussianPair::new(1.0, 1.0).unwrap();
        assert!(gaussian_sibson(unit, -1e-9).unwrap().abs() < 1e-8);
        assert!((gaussian_sibson(unit, -0.5).unwrap() - 0.346_573_590_279_972_6).abs() < 1e-12);
        assert_eq!(
            gaussian_sibson(unit, -1.0),
            Err(Error::AlphaOutOfValidityRange { alpha: -1.0, lower: -1.0 })
        );
        assert!(gaussian_sibson(unit, 0.0).is_err());
        assert!(GaussianPair::new(0.0, 1.0).is_err());
        let g = GaussianPair::new(1.0, 4.0).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..40 {
            let a = -4.0 + k as f64 * 0.1;
            let v = gaussian_sibson(g, a).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn interval_mass_is_cancellation_free() {
        let upper = normal_interval_mass(12.0, 12.1);
        let lower = normal_interval_mass(-12.1, -12.0);
        assert!(upper > 0.0 && (upper - lower).abs() < 1e-12 * upper);
        assert!((normal_interval_mass(f64::NEG_INFINITY, f64::INFINITY) - 1.0).abs() < 1e-15);
        let m = normal_interval_mass(-1.0, 1.0);
        assert!((m - 0.682_689_492_137_085_9).abs() < 1e-13, "{m}");
    }

    #[test]
    fn coarse_quantization_is_valid() {
        let g = GaussianPair::new(1.0, 4.0).unwrap();
        let j = quantized_gaussian_joint(g, 64).unwrap();
        assert_eq!((j.n_x(), j.n_y()), (64, 64));
        assert!(j.as_flat().iter().all(|&p| p > 0.0));
        let v = sibson_mi(&j, -1.0, ZeroConvention::Strict).unwrap().value;
        assert!((v - gaussian_sibson(g, -1.0).unwrap()).abs() < 2e-2);
    }
}
