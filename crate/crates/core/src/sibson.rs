//! Sibson's α-mutual information `I_α(X, Y)` on finite alphabets.
//!
//! Positive orders use the classical minimization over output measures,
//! negative orders the negated maximization
//!
//! ```text
//! I_α(X, Y) = − max_{Q_Y} D_α(P_XY ‖ P_X Q_Y),    α < 0.
//! ```
//!
//! Both share one closed form. With the per-output weights
//!
//! ```text
//! t(y) = ( Σ_{x: P_X(x) > 0} P_{Y|X=x}(y)^α P_X(x) )^{1/α},    S = Σ_y t(y),
//! ```
//!
//! the value is `α/(α−1)·ln S` for `α > 0` and `α/(1−α)·ln S` for `α < 0`,
//! and the optimizing output measure is `Q*_Y = t / S`. Orders `±∞` are the
//! maximal leakage and the maximal-cost leakage; `α = 1` is Shannon's mutual
//! information; `α = 0` is rejected.
//!
//! Under [`ZeroConvention::Strict`] a negative order sends the inner sum of
//! any output `y` with some `P_{Y|X=x}(y) = 0` to `+∞`, so `t(y) = 0`. If
//! every `t(y)` vanishes the information is `+∞`: every output measure then
//! has divergence `−∞`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;
use crate::order::{ext_real, AlphaOrder, ExtReal, Regime, ZeroConvention, INFINITE_ORDER_CUTOFF};
use crate::prob::{JointPmf, Pmf};

/// `I_α` together with the optimizing output measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SibsonResult {
    /// Information in nats.
    #[serde(with = "ext_real")]
    pub value: ExtReal,
    /// `Q*_Y` for finite orders outside `{0, 1}`; absent when the normalizer
    /// degenerates (all weights vanish).
    pub optimal_q: Option<Pmf>,
    pub alpha: AlphaOrder,
    pub convention: ZeroConvention,
}

/// Rows `x` with `P_X(x) > 0`, as `(ln P_X(x), x)`.
fn input_support(joint: &JointPmf) -> Vec<(f64, usize)> {
    joint
        .p_x()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(x, &p)| (p.ln(), x))
        .collect()
}

/// `ln t(y)` for every output, for a finite nonzero order.
fn log_weights(joint: &JointPmf, alpha: f64, conv: ZeroConvention) -> Vec<f64> {
    let rows = input_support(joint);
    let strict_negative = alpha < 0.0 && conv == ZeroConvention::Strict;
    let n_y = joint.n_y();
    let term = |ln_px: f64, p: f64| alpha * (p.ln() - ln_px) + ln_px;
    // row-major two-pass log-sum-exp per column: maxima first, then the sums
    let mut max = vec![f64::NEG_INFINITY; n_y];
    let mut has_zero = vec![false; n_y];
    for &(ln_px, x) in &rows {
        for (y, &p) in joint.row(x).iter().enumerate() {
            if p > 0.0 {
                max[y] = max[y].max(term(ln_px, p));
            } else {
                has_zero[y] = true;
            }
        }
    }
    let mut sum = vec![0.0; n_y];
    for &(ln_px, x) in &rows {
        for (y, &p) in joint.row(x).iter().enumerate() {
            if p > 0.0 {
                sum[y] += (term(ln_px, p) - max[y]).exp();
            }
        }
    }
    (0..n_y)
        .map(|y| {
            if (strict_negative && has_zero[y]) || max[y] == f64::NEG_INFINITY {
                // a vanishing conditional under a negative order, or no
                // contributing input at all
                f64::NEG_INFINITY
            } else {
                (max[y] + sum[y].ln()) / alpha
            }
        })
        .collect()
}

fn closed_form(alpha: f64, ln_s: f64) -> f64 {
    if alpha < 0.0 {
        alpha / (1.0 - alpha) * ln_s
    } else {
        alpha / (alpha - 1.0) * ln_s
    }
}

/// Sibson's α-mutual information of `(X, Y)` in nats.
///
/// Orders with `|α| > 10^6` are evaluated at their ±∞ limit.
pub fn sibson_mi(joint: &JointPmf, alpha: f64, conv: ZeroConvention) -> Result<SibsonResult> {
    let order = AlphaOrder::new(alpha)?;
    let make = |value: f64, optimal_q: Option<Pmf>| SibsonResult {
        value,
        optimal_q,
        alpha: order,
        convention: conv,
    };
    match order.regime() {
        Regime::Zero => Err(Error::AlphaZeroUndefined),
        Regime::One => Ok(make(shannon_mi(joint), None)),
        Regime::PosInfinity => Ok(make(maximal_leakage(joint), None)),
        Regime::NegInfinity => Ok(make(cost_leakage(joint, conv), None)),
        _ if alpha > INFINITE_ORDER_CUTOFF => Ok(make(maximal_leakage(joint), None)),
        _ if alpha < -INFINITE_ORDER_CUTOFF => Ok(make(cost_leakage(joint, conv), None)),
        _ => {
            let weights = log_weights(joint, alpha, conv);
            let ln_s = log_sum_exp(weights.iter().copied());
            let q = normalize(&weights, ln_s).ok();
            Ok(make(closed_form(alpha, ln_s), q))
        }
    }
}

fn normalize(log_weights: &[f64], ln_s: f64) -> Result<Pmf> {
    if ln_s == f64::NEG_INFINITY {
        return Err(Error::DegenerateNormalizer);
    }
    Pmf::new(log_weights.iter().map(|&w| (w - ln_s).exp()).collect())
}

/// The output measure `Q*_Y` that attains the optimum in the variational
/// definition, for finite orders outside `{0, 1}`.
pub fn optimal_q_y(joint: &JointPmf, alpha: f64, conv: ZeroConvention) -> Result<Pmf> {
    let order = AlphaOrder::new(alpha)?;
    match order.regime() {
        Regime::Zero => Err(Error::AlphaZeroUndefined),
        Regime::Negative | Regime::Below1 | Regime::Above1 => {
            let weights = log_weights(joint, alpha, conv);
            let ln_s = log_sum_exp(weights.iter().copied());
            normalize(&weights, ln_s)
        }
        _ => Err(Error::AlphaOutOfRange {
            alpha,
            expected: "finite, not 0 or 1",
        }),
    }
}

/// Shannon mutual information `Σ p(x,y) ln(p(x,y) / (p(x) p(y)))`.
pub fn shannon_mi(joint: &JointPmf) -> f64 {
    let (px, py) = (joint.p_x(), joint.p_y());
    let mut acc = 0.0;
    for (x, &p_x) in px.iter().enumerate() {
        for (&p, &p_y) in joint.row(x).iter().zip(py) {
            if p > 0.0 {
                acc += p * (p.ln() - p_x.ln() - p_y.ln());
            }
        }
    }
    acc.max(0.0)
}

fn conditional_column(joint: &JointPmf, y: usize) -> impl Iterator<Item = f64> + '_ {
    joint
        .p_x()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(move |(x, &p)| joint.get(x, y) / p)
}

/// Maximal leakage `ln Σ_y max_{x: P_X(x)>0} P_{Y|X=x}(y)`, the `α = +∞` order.
pub fn maximal_leakage(joint: &JointPmf) -> ExtReal {
    let total: f64 = (0..joint.n_y())
        .map(|y| conditional_column(joint, y).fold(0.0, f64::max))
        .sum();
    total.ln().max(0.0)
}

/// Maximal-cost leakage `−ln Σ_y min_{x: P_X(x)>0} P_{Y|X=x}(y)`, the
/// `α = −∞` order. It is `+∞` when every output is impossible under some input.
pub fn maximal_cost_leakage(joint: &JointPmf) -> ExtReal {
    cost_leakage(joint, ZeroConvention::Strict)
}

/// Sum of column minima; the support-restricted reading only takes minima
/// over nonzero conditionals of outputs in the support.
fn column_min_sum(joint: &JointPmf, conv: ZeroConvention) -> f64 {
    (0..joint.n_y())
        .map(|y| {
            let it = conditional_column(joint, y);
            match conv {
                ZeroConvention::Strict => it.fold(f64::INFINITY, f64::min),
                ZeroConvention::SupportRestricted => {
                    let m = it.filter(|&c| c > 0.0).fold(f64::INFINITY, f64::min);
                    if m.is_infinite() {
                        0.0
                    } else {
                        m
                    }
                }
            }
        })
        .sum()
}

fn cost_leakage(joint: &JointPmf, conv: ZeroConvention) -> f64 {
    let total = column_min_sum(joint, conv);
    if total <= 0.0 {
        return f64::INFINITY;
    }
    // each column minimum is at most the column's P_Y mass, so total ≤ 1
    (-total.ln()).max(0.0)
}

/// `S = Σ_y ‖P_{Y|X}(y)‖_{L^α(P_X)} = exp(−((α−1)/α)·I_α)` for `α < 0`,
/// with the `α = −∞` limit `Σ_y min_x P_{Y|X=x}(y)`.
pub fn sibson_exp_transform(joint: &JointPmf, alpha: f64, conv: ZeroConvention) -> Result<ExtReal> {
    let order = AlphaOrder::new(alpha)?;
    match order.regime() {
        Regime::NegInfinity => Ok(column_min_sum(joint, conv)),
        Regime::Negative => {
            let weights = log_weights(joint, alpha, conv);
            Ok(log_sum_exp(weights).exp())
        }
        _ => Err(Error::AlphaOutOfRange {
            alpha,
            expected: "negative",
        }),
    }
}
