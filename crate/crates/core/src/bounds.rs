//! Functional inequalities linking `E_{P_XY}[f]` to `I_α(X, Y)`.
//!
//! The base inequality applies the reverse Hölder inequality twice, once
//! over `P_X` with exponents `(β, α)` and once over `P_Y` with `(β′, α′)`,
//! where `β = α/(α−1)` is always the Hölder conjugate. Letting `α′ → 1`
//! leaves an essential infimum over `P_Y` and a factor `g(I_α)`:
//!
//! | regime      | `β`       | `h_β(f)`                           | `g(I_α)`               | direction |
//! |-------------|-----------|------------------------------------|------------------------|-----------|
//! | `α < 0`     | `(0, 1)`  | `min_y E_X[f(X,y)^β]^{1/β}`        | `exp((1−α)/α · I_α)`   | `≥`       |
//! | `0 < α < 1` | `< 0`     | `min_y E_X[f(X,y)^β]^{1/β}`        | `exp((α−1)/α · I_α)`   | `≥`       |
//! | `α > 1`     | `> 1`     | `max_y E_X[f(X,y)^β]^{1/β}`        | `exp((α−1)/α · I_α)`   | `≤`       |
//!
//! Minima and maxima range over `supp(P_Y)`. Information terms are always
//! evaluated under [`ZeroConvention::Strict`]: a zero of `dP_XY/d(P_X P_Y)`
//! raised to a negative power is `+∞`, which is what the inequality needs.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::power_mean;
use crate::order::{ext_real, hoelder_conjugate, ExtReal, ZeroConvention};
use crate::prob::JointPmf;
use crate::sibson::sibson_mi;

/// Slack below which a reported inequality still counts as satisfied.
pub const BOUND_TOLERANCE: f64 = 1e-10;

/// A non-negative function on `X × Y`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOnJoint {
    n_x: usize,
    n_y: usize,
    values: Vec<f64>,
}

impl FunctionOnJoint {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_x = rows.len();
        let n_y = rows.first().map_or(0, Vec::len);
        if n_x == 0 || n_y == 0 {
            return Err(Error::Empty);
        }
        let mut values = Vec::with_capacity(n_x * n_y);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n_y {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n_y,
                    found: r.len(),
                });
            }
            values.extend(r);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        Ok(FunctionOnJoint { n_x, n_y, values })
    }

    pub fn constant(n_x: usize, n_y: usize, c: f64) -> Result<Self> {
        Self::new(vec![vec![c; n_y]; n_x])
    }

    pub fn indicator(event: &EventSet) -> Self {
        FunctionOnJoint {
            n_x: event.n_x,
            n_y: event.n_y,
            values: event
                .members
                .iter()
                .map(|&m| if m { 1.0 } else { 0.0 })
                .collect(),
        }
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[x * self.n_y + y]
    }

    /// True when every value is 0 or 1.
    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    fn check_shape(&self, joint: &JointPmf) -> Result<()> {
        if self.n_x != joint.n_x() || self.n_y != joint.n_y() {
            return Err(Error::DimensionMismatch {
                expected: joint.n_x() * joint.n_y(),
                found: self.n_x * self.n_y,
            });
        }
        Ok(())
    }

    fn column(&self, y: usize) -> Vec<f64> {
        (0..self.n_x).map(|x| self.get(x, y)).collect()
    }

    fn has_zero_on(&self, joint: &JointPmf) -> bool {
        (0..self.n_x)
            .filter(|&x| joint.p_x()[x] > 0.0)
            .any(|x| (0..self.n_y).any(|y| joint.p_y()[y] > 0.0 && self.get(x, y) == 0.0))
    }
}

/// An event `E ⊆ X × Y` given by its membership matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSet {
    n_x: usize,
    n_y: usize,
    members: Vec<bool>,
}

impl EventSet {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n_x = rows.len();
        let n_y = rows.first().map_or(0, Vec::len);
        if n_x == 0 || n_y == 0 {
            return Err(Error::Empty);
        }
        let mut members = Vec::with_capacity(n_x * n_y);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n_y {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n_y,
                    found: r.len(),
                });
            }
            members.extend(r);
        }
        Ok(EventSet { n_x, n_y, members })
    }

    /// The event whose cells are the set bits of `mask`, row-major.
    pub fn from_mask(n_x: usize, n_y: usize, mask: u64) -> Self {
        EventSet {
            n_x,
            n_y,
            members: (0..n_x * n_y).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn from_fn(n_x: usize, n_y: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        EventSet {
            n_x,
            n_y,
            members: (0..n_x * n_y).map(|i| f(i / n_y, i % n_y)).collect(),
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.members[x * self.n_y + y]
    }

    pub fn probability(&self, joint: &JointPmf) -> f64 {
        joint
            .as_flat()
            .iter()
            .zip(&self.members)
            .filter(|(_, &m)| m)
            .map(|(&p, _)| p)
            .sum()
    }

    /// `P_X(E_y)` for the slice `E_y = {x : (x, y) ∈ E}`.
    pub fn slice_probability(&self, joint: &JointPmf, y: usize) -> f64 {
        (0..self.n_x)
            .filter(|&x| self.contains(x, y))
            .map(|x| joint.p_x()[x])
            .sum()
    }
}

/// Conjugate exponents `1/α + 1/β = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderPair {
    #[serde(with = "ext_real")]
    pub alpha: f64,
    pub beta: f64,
}

impl HolderPair {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha == 0.0 || alpha == 1.0 {
            return Err(Error::AlphaOutOfRange {
                alpha,
                expected: "not 0 or 1",
            });
        }
        Ok(HolderPair {
            alpha,
            beta: hoelder_conjugate(alpha),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDirection {
    /// The bound is a lower bound: `lhs ≥ bound`.
    AtLeast,
    /// The bound is an upper bound: `lhs ≤ bound`.
    AtMost,
}

impl fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundDirection::AtLeast => ">=",
            BoundDirection::AtMost => "<=",
        })
    }
}

impl Serialize for BoundDirection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Why a bound collapsed to its trivial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// A zero of `f` met a negative exponent; the lower bound is 0.
    ZeroFunctionWithNegativeExponent,
    /// Indicator functions admit no multiplicative term for `0 < α < 1`.
    IndicatorCannotBeProvided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundRegime {
    #[serde(rename = "alpha<0")]
    Negative,
    #[serde(rename = "0<alpha<1")]
    Below1,
    #[serde(rename = "alpha>1")]
    Above1,
}

impl BoundRegime {
    fn of(alpha: f64) -> Option<Self> {
        if alpha < 0.0 {
            Some(BoundRegime::Negative)
        } else if alpha > 0.0 && alpha < 1.0 {
            Some(BoundRegime::Below1)
        } else if alpha > 1.0 {
            Some(BoundRegime::Above1)
        } else {
            None
        }
    }
}

impl fmt::Display for BoundRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundRegime::Negative => "alpha<0",
            BoundRegime::Below1 => "0<alpha<1",
            BoundRegime::Above1 => "alpha>1",
        })
    }
}

/// One evaluated inequality `lhs (≥|≤) multiplicative_term · info_term`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(with = "ext_real")]
    pub alpha: f64,
    #[serde(with = "ext_real::option", skip_serializing_if = "Option::is_none")]
    pub alpha_prime: Option<f64>,
    pub regime: BoundRegime,
    pub lhs: f64,
    /// `h_β(f)`.
    #[serde(with = "ext_real")]
    pub multiplicative_term: ExtReal,
    /// `g(I_α)`.
    #[serde(with = "ext_real")]
    pub info_term: ExtReal,
    #[serde(with = "ext_real")]
    pub bound: ExtReal,
    pub direction: BoundDirection,
    pub satisfied: bool,
    /// `lhs − bound` for lower bounds, `bound − lhs` for upper bounds.
    #[serde(with = "ext_real")]
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<Degeneracy>,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        alpha: f64,
        alpha_prime: Option<f64>,
        lhs: f64,
        multiplicative_term: f64,
        info_term: f64,
        direction: BoundDirection,
        degenerate: Option<Degeneracy>,
    ) -> Self {
        let bound = if multiplicative_term == 0.0 || info_term == 0.0 {
            0.0
        } else {
            multiplicative_term * info_term
        };
        let slack = match direction {
            BoundDirection::AtLeast => lhs - bound,
            BoundDirection::AtMost => bound - lhs,
        };
        BoundReport {
            alpha,
            alpha_prime,
            regime: BoundRegime::of(alpha).expect("order validated by caller"),
            lhs,
            multiplicative_term,
            info_term,
            bound,
            direction,
            satisfied: slack >= -BOUND_TOLERANCE,
            slack,
            degenerate,
        }
    }
}

fn expectation(joint: &JointPmf, f: &FunctionOnJoint) -> f64 {
    joint
        .as_flat()
        .iter()
        .zip(&f.values)
        .map(|(&p, &v)| p * v)
        .sum()
}

fn output_support(joint: &JointPmf) -> impl Iterator<Item = usize> + '_ {
    (0..joint.n_y()).filter(|&y| joint.p_y()[y] > 0.0)
}

/// `E_X[f(X, y)^β]^{1/β}` for each output (zero outside `supp(P_Y)`).
fn inner_norms(joint: &JointPmf, f: &FunctionOnJoint, beta: f64) -> Vec<f64> {
    (0..joint.n_y())
        .map(|y| {
            if joint.p_y()[y] > 0.0 {
                power_mean(joint.p_x(), &f.column(y), beta)
            } else {
                0.0
            }
        })
        .collect()
}

/// `(α−1)/α`, with its limit 1 at `α = ±∞`.
fn info_exponent(alpha: f64) -> f64 {
    if alpha.is_infinite() {
        1.0
    } else {
        (alpha - 1.0) / alpha
    }
}

fn strict_information(joint: &JointPmf, alpha: f64) -> Result<f64> {
    Ok(sibson_mi(joint, alpha, ZeroConvention::Strict)?.value)
}

fn exp_scaled(coefficient: f64, info: f64) -> f64 {
    if info == 0.0 {
        1.0
    } else {
        (coefficient * info).exp()
    }
}

fn require_below_one(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha == 0.0 || alpha >= 1.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "below 1 and nonzero",
        });
    }
    Ok(())
}

/// Two-step reverse-Hölder lower bound on `E_{P_XY}[f]` for `α, α′ < 1`.
///
/// `multiplicative_term` is `E_Y[E_X[f^β]^{β′/β}]^{1/β′}` and `info_term`
/// is `E_Y[E_X[r^α]^{α′/α}]^{1/α′}` with `r = dP_XY/d(P_X P_Y)`.
pub fn reverse_holder_bound(
    joint: &JointPmf,
    f: &FunctionOnJoint,
    alpha: f64,
    alpha_prime: f64,
) -> Result<BoundReport> {
    require_below_one(alpha)?;
    require_below_one(alpha_prime)?;
    f.check_shape(joint)?;
    let beta = hoelder_conjugate(alpha);
    let beta_prime = hoelder_conjugate(alpha_prime);

    let a = inner_norms(joint, f, beta);
    let (px, py) = (joint.p_x(), joint.p_y());
    let b: Vec<f64> = (0..joint.n_y())
        .map(|y| {
            if py[y] == 0.0 {
                return 0.0;
            }
            let ratio: Vec<f64> = (0..joint.n_x())
                .map(|x| {
                    if px[x] > 0.0 {
                        joint.get(x, y) / (px[x] * py[y])
                    } else {
                        0.0
                    }
                })
                .collect();
            power_mean(px, &ratio, alpha)
        })
        .collect();

    let first = power_mean(py, &a, beta_prime);
    let second = power_mean(py, &b, alpha_prime);
    let zero_f = beta < 0.0 && f.has_zero_on(joint);
    let zero_a = beta_prime < 0.0 && output_support(joint).any(|y| a[y] == 0.0);
    let degenerate = ((zero_f || zero_a) && first == 0.0)
        .then_some(Degeneracy::ZeroFunctionWithNegativeExponent);
    Ok(BoundReport::assemble(
        alpha,
        Some(alpha_prime),
        expectation(joint, f),
        first,
        second,
        BoundDirection::AtLeast,
        degenerate,
    ))
}

/// Lower bound `E[f] ≥ min_y E_X[f^β]^{1/β} · exp(sign(α)·(α−1)/α·I_α)` for
/// `α < 1`, `α ≠ 0` (including `α = −∞`).
pub fn functional_lower_bound(
    joint: &JointPmf,
    f: &FunctionOnJoint,
    alpha: f64,
) -> Result<BoundReport> {
    require_below_one(alpha)?;
    f.check_shape(joint)?;
    let beta = hoelder_conjugate(alpha);
    let a = inner_norms(joint, f, beta);
    let h = output_support(joint).map(|y| a[y]).fold(f64::INFINITY, f64::min);
    let info = strict_information(joint, alpha)?;
    let g = exp_scaled(alpha.signum() * info_exponent(alpha), info);
    let degenerate = (beta < 0.0 && f.has_zero_on(joint))
        .then_some(Degeneracy::ZeroFunctionWithNegativeExponent);
    Ok(BoundReport::assemble(
        alpha,
        None,
        expectation(joint, f),
        h,
        g,
        BoundDirection::AtLeast,
        degenerate,
    ))
}

/// `P_XY(E) ≥ min_y P_X(E_y)^{1/β} · exp(−(α−1)/α · I_α)` for `α < 0`; at
/// `α = −∞` this reads `min_y P_X(E_y) · exp(−L^c(X→Y))`.
pub fn event_probability_lower_bound(
    joint: &JointPmf,
    event: &EventSet,
    alpha: f64,
) -> Result<BoundReport> {
    if alpha.is_nan() || alpha >= 0.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "negative",
        });
    }
    if event.n_x != joint.n_x() || event.n_y != joint.n_y() {
        return Err(Error::DimensionMismatch {
            expected: joint.n_x() * joint.n_y(),
            found: event.n_x * event.n_y,
        });
    }
    let inv_beta = info_exponent(alpha);
    let min_slice = output_support(joint)
        .map(|y| event.slice_probability(joint, y))
        .fold(f64::INFINITY, f64::min);
    let h = if min_slice <= 0.0 {
        0.0
    } else {
        min_slice.powf(inv_beta)
    };
    let info = strict_information(joint, alpha)?;
    let g = exp_scaled(-inv_beta, info);
    Ok(BoundReport::assemble(
        alpha,
        None,
        event.probability(joint),
        h,
        g,
        BoundDirection::AtLeast,
        None,
    ))
}

/// Upper bound `E[f] ≤ max_y E_X[f^β]^{1/β} · exp((α−1)/α · I_α)` for `α > 1`
/// (including `α = +∞`, where the information term is the maximal leakage).
pub fn functional_upper_bound(
    joint: &JointPmf,
    f: &FunctionOnJoint,
    alpha: f64,
) -> Result<BoundReport> {
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "above 1",
        });
    }
    f.check_shape(joint)?;
    let beta = hoelder_conjugate(alpha);
    let a = inner_norms(joint, f, beta);
    let h = output_support(joint).map(|y| a[y]).fold(0.0, f64::max);
    let info = strict_information(joint, alpha)?;
    let g = exp_scaled(info_exponent(alpha), info);
    Ok(BoundReport::assemble(
        alpha,
        None,
        expectation(joint, f),
        h,
        g,
        BoundDirection::AtMost,
        None,
    ))
}

/// One report per order, in the regime-appropriate direction.
pub fn table1_report(
    joint: &JointPmf,
    f: &FunctionOnJoint,
    alphas: &[f64],
) -> Result<Vec<BoundReport>> {
    alphas
        .iter()
        .map(|&alpha| match BoundRegime::of(alpha) {
            Some(BoundRegime::Above1) => functional_upper_bound(joint, f, alpha),
            Some(BoundRegime::Below1) => {
                let mut r = functional_lower_bound(joint, f, alpha)?;
                if f.is_indicator() && f.has_zero_on(joint) {
                    r.degenerate = Some(Degeneracy::IndicatorCannotBeProvided);
                }
                Ok(r)
            }
            Some(BoundRegime::Negative) => functional_lower_bound(joint, f, alpha),
            None => Err(Error::AlphaOutOfRange {
                alpha,
                expected: "not 0 or 1",
            }),
        })
        .collect()
}

#[derive(Serialize)]
struct Table1Row {
    alpha: String,
    regime: String,
    h_beta: String,
    #[serde(rename = "g_Ialpha")]
    g_ialpha: String,
    lhs: String,
    bound: String,
    direction: String,
    satisfied: bool,
    slack: String,
}

pub(crate) fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// CSV with columns `alpha, regime, h_beta, g_Ialpha, lhs, bound,
/// direction, satisfied, slack`.
pub fn table1_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        let h_beta = if r.degenerate == Some(Degeneracy::IndicatorCannotBeProvided) {
            "cannot be provided".to_string()
        } else {
            fmt_num(r.multiplicative_term)
        };
        w.serialize(Table1Row {
            alpha: fmt_num(r.alpha),
            regime: r.regime.to_string(),
            h_beta,
            g_ialpha: fmt_num(r.info_term),
            lhs: fmt_num(r.lhs),
            bound: fmt_num(r.bound),
            direction: r.direction.to_string(),
            satisfied: r.satisfied,
            slack: fmt_num(r.slack),
        })
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{bsc_joint, erasure_joint};
    use crate::prob::Pmf;

    fn product() -> JointPmf {
        Pmf::new(vec![0.3, 0.7])
            .unwrap()
            .product(&Pmf::new(vec![0.2, 0.5, 0.3]).unwrap())
    }

    fn mismatch() -> FunctionOnJoint {
        FunctionOnJoint::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap()
    }

    #[test]
    fn independent_constant_is_tight() {
        let j = product();
        let f = FunctionOnJoint::constant(2, 3, 2.5).unwrap();
        let r = reverse_holder_bound(&j, &f, -1.0, -1.0).unwrap();
        assert!((r.lhs - 2.5).abs() < 1e-12 && (r.bound - 2.5).abs() < 1e-12);
        for a in [-3.0, -0.5, 0.5] {
            let r = functional_lower_bound(&j, &f, a).unwrap();
            assert!((r.bound - 2.5).abs() < 1e-12 && r.satisfied);
        }
        let r = functional_upper_bound(&j, &f, 2.0).unwrap();
        assert!((r.bound - 2.5).abs() < 1e-12 && r.satisfied);
    }

    #[test]
    fn bsc_holder_example() {
        let j = bsc_joint(0.1).unwrap();
        let r = reverse_holder_bound(&j, &mismatch(), -1.0, -1.0).unwrap();
        // E[1 + 1{x≠y}] = 1.1
        assert!((r.lhs - 1.1).abs() < 1e-12);
        assert!(r.satisfied && r.bound > 0.0 && r.bound <= r.lhs);
        assert_eq!(r.direction, BoundDirection::AtLeast);
    }

    #[test]
    fn full_space_indicator_gives_exp_information() {
        let j = bsc_joint(0.2).unwrap();
        let f = FunctionOnJoint::constant(2, 2, 1.0).unwrap();
        let a = -2.0;
        let r = functional_lower_bound(&j, &f, a).unwrap();
        let i = sibson_mi(&j, a, ZeroConvention::Strict).unwrap().value;
        assert!((r.bound - ((1.0 - a) / a * i).exp()).abs() < 1e-12);
        assert!(r.bound <= 1.0);
    }

    #[test]
    fn event_bound_cases() {
        let j = product();
        let full = EventSet::from_fn(2, 3, |_, _| true);
        let r = event_probability_lower_bound(&j, &full, -2.0).unwrap();
        assert!((r.bound - 1.0).abs() < 1e-12 && (r.lhs - 1.0).abs() < 1e-12);
        let empty = EventSet::from_fn(2, 3, |_, _| false);
        assert_eq!(event_probability_lower_bound(&j, &empty, -2.0).unwrap().bound, 0.0);

        let j = bsc_joint(0.1).unwrap();
        let diag = EventSet::from_fn(2, 2, |x, y| x == y);
        let r = event_probability_lower_bound(&j, &diag, -2.0).unwrap();
        assert!((r.lhs - 0.9).abs() < 1e-12);
        // matches the functional form with f = 1_E
        let viaf = functional_lower_bound(&j, &FunctionOnJoint::indicator(&diag), -2.0).unwrap();
        assert!((r.bound - viaf.bound).abs() < 1e-12);
        assert!(r.satisfied && r.bound > 0.0);
        let far = event_probability_lower_bound(&j, &diag, f64::NEG_INFINITY).unwrap();
        assert!((far.bound - 0.5 * 0.2).abs() < 1e-12);
        assert!(event_probability_lower_bound(&j, &diag, 0.5).is_err());
    }

    #[test]
    fn upper_bound_indicator_row() {
        let j = bsc_joint(0.1).unwrap();
        let e = EventSet::from_fn(2, 2, |x, y| x == y);
        let r = functional_upper_bound(&j, &FunctionOnJoint::indicator(&e), 2.0).unwrap();
        let i2 = sibson_mi(&j, 2.0, ZeroConvention::Strict).unwrap().value;
        assert!((r.bound - 0.5f64.sqrt() * (i2 / 2.0).exp()).abs() < 1e-12);
        assert!(r.satisfied);
        assert!(functional_upper_bound(&j, &mismatch(), 0.5).is_err());
    }

    #[test]
    fn degenerate_zero_function() {
        let j = bsc_joint(0.1).unwrap();
        let f = FunctionOnJoint::new(vec![vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let r = functional_lower_bound(&j, &f, 0.5).unwrap();
        assert_eq!(r.bound, 0.0);
        assert_eq!(r.degenerate, Some(Degeneracy::ZeroFunctionWithNegativeExponent));
        let r = reverse_holder_bound(&j, &f, 0.5, 0.5).unwrap();
        assert_eq!(r.degenerate, Some(Degeneracy::ZeroFunctionWithNegativeExponent));
        assert_eq!(r.bound, 0.0);
        // the outer exponent is positive here, so one vanishing column is absorbed
        let r = reverse_holder_bound(&j, &f, 0.5, -1.0).unwrap();
        assert!(r.degenerate.is_none() && r.bound > 0.0 && r.satisfied);
        assert!(functional_lower_bound(&j, &f, -0.5).unwrap().degenerate.is_none());
    }

    #[test]
    fn table1_rows() {
        let j = bsc_joint(0.1).unwrap();
        let rows = table1_report(&j, &mismatch(), &[-2.0, 0.5, 2.0]).unwrap();
        let dirs: Vec<_> = rows.iter().map(|r| r.direction).collect();
        assert_eq!(dirs, [BoundDirection::AtLeast, BoundDirection::AtLeast, BoundDirection::AtMost]);
        assert!(rows.iter().all(|r| r.satisfied));

        let e = FunctionOnJoint::indicator(&EventSet::from_fn(2, 2, |x, y| x == y));
        let rows = table1_report(&j, &e, &[-2.0, 0.5, 2.0]).unwrap();
        assert_eq!(rows[1].degenerate, Some(Degeneracy::IndicatorCannotBeProvided));
        let csv = table1_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "alpha,regime,h_beta,g_Ialpha,lhs,bound,direction,satisfied,slack"
        );
        assert!(csv.contains("cannot be provided"));
        assert!(table1_report(&j, &e, &[1.0]).is_err());

        let f = FunctionOnJoint::constant(2, 3, 3.0).unwrap();
        for r in table1_report(&product(), &f, &[-2.0, 0.5, 2.0]).unwrap() {
            assert!(r.slack.abs() < 1e-12);
        }
    }

    #[test]
    fn erasure_witness_is_tight() {
        let j = erasure_joint(0.98).unwrap();
        let full = EventSet::from_fn(2, 3, |_, _| true);
        for a in [-10.0, -2.0, -0.5] {
            let r = event_probability_lower_bound(&j, &full, a).unwrap();
            assert!(r.bound > 0.9 && r.slack < 0.05);
        }
    }

    #[test]
    fn erasure_event_on_the_erasure_symbol() {
        // E = {y = e} has empty slices at the unerased outputs, so the bound
        // is 0 and the slack is P(E) = δ
        let j = erasure_joint(0.02).unwrap();
        let e = EventSet::from_fn(2, 3, |_, y| y == 2);
        for a in [-10.0, -2.0, -0.5, f64::NEG_INFINITY] {
            let r = event_probability_lower_bound(&j, &e, a).unwrap();
            assert_eq!(r.bound, 0.0);
            assert!(r.satisfied && r.slack < 0.05);
        }
    }

    #[test]
    fn event_bound_approaches_its_cost_leakage_form() {
        let j = crate::verify::random_instance(3, 2, 3).unwrap();
        let e = EventSet::from_mask(2, 3, 0b011_101);
        let limit = event_probability_lower_bound(&j, &e, f64::NEG_INFINITY).unwrap();
        let min_slice = (0..3).map(|y| e.slice_probability(&j, y)).fold(1.0, f64::min);
        let direct = min_slice * (-crate::sibson::maximal_cost_leakage(&j)).exp();
        assert!(limit.bound > 0.0 && (limit.bound - direct).abs() < 1e-12);
        let near = event_probability_lower_bound(&j, &e, -1e6).unwrap();
        assert!((near.bound - limit.bound).abs() < 1e-6);
        // at −10^4 the exponent 1/β = 1.0001 and the finite-order information
        // each still move the bound by more than 10^-6
        let far = event_probability_lower_bound(&j, &e, -1e4).unwrap();
        assert!((far.bound - limit.bound).abs() < 1e-3);
    }

    #[test]
    #[ignore = "fails: at -10^4 this instance is still 1.25e-6 away from the limit"]
    fn event_bound_within_one_millionth_at_minus_ten_thousand() {
        let j = crate::verify::random_instance(3, 2, 3).unwrap();
        let e = EventSet::from_mask(2, 3, 0b011_101);
        let limit = event_probability_lower_bound(&j, &e, f64::NEG_INFINITY).unwrap();
        let far = event_probability_lower_bound(&j, &e, -1e4).unwrap();
        assert!((far.bound - limit.bound).abs() < 1e-6, "{}", far.bound - limit.bound);
    }

    #[test]
    fn alpha_errors() {
        let j = bsc_joint(0.1).unwrap();
        assert!(reverse_holder_bound(&j, &mismatch(), 1.0, -1.0).is_err());
        assert!(reverse_holder_bound(&j, &mismatch(), -1.0, 0.0).is_err());
        assert!(functional_lower_bound(&j, &mismatch(), 2.0).is_err());
        let wrong = FunctionOnJoint::constant(3, 2, 1.0).unwrap();
        assert!(functional_lower_bound(&j, &wrong, -1.0).is_err());
        assert!(FunctionOnJoint::new(vec![vec![-1.0]]).is_err());
        assert!(HolderPair::new(0.0).is_err());
        let h = HolderPair::new(-3.0).unwrap();
        assert!((1.0 / h.alpha + 1.0 / h.beta - 1.0).abs() < 1e-12);
    }
}
