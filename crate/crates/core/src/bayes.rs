//! Exact Bayes risk on finite models and its `I_α`-based lower bounds.
//!
//! With `β = α/(α−1) ∈ (0, 1)` for `α < 0`:
//!
//! - the moment bound `R ≥ exp((1/β)(−I_α(W, X) + ln min_ŵ E[ℓ(W, ŵ)^β]))`;
//! - the small-ball bound `R ≥ ρ · exp(−I_α/β) · (1 − L_W(ρ))^{1/β}`, where
//!   `L_W(ρ) = max_ŵ P_W(ℓ(W, ŵ) ≤ ρ)`.
//!
//! At `α = −∞` both use `β = 1` and the maximal-cost leakage.

use serde::Serialize;

use crate::bounds::fmt_num;
use crate::error::{Error, Result};
use crate::order::{ext_real, hoelder_conjugate, ExtReal, ZeroConvention};
use crate::prob::{joint_from_channel, Channel, JointPmf, Pmf};
use crate::sibson::sibson_mi;

/// Largest estimator space the exhaustive enumeration will walk.
pub const MAX_ENUMERATED_ESTIMATORS: u64 = 1 << 20;

/// Non-negative loss `ℓ(w, ŵ)`, one row per parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LossMatrix {
    n_w: usize,
    n_est: usize,
    entries: Vec<f64>,
}

impl LossMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_w = rows.len();
        let n_est = rows.first().map_or(0, Vec::len);
        if n_w == 0 || n_est == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(n_w * n_est);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n_est {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n_est,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        Ok(LossMatrix {
            n_w,
            n_est,
            entries,
        })
    }

    /// `ℓ(w, ŵ) = 1{w ≠ ŵ}` on an `m`-point alphabet.
    pub fn zero_one(m: usize) -> Result<Self> {
        Self::new(
            (0..m)
                .map(|w| (0..m).map(|e| if w == e { 0.0 } else { 1.0 }).collect())
                .collect(),
        )
    }

    /// `ℓ(w, ŵ) = (points[w] − points[ŵ])²`.
    pub fn squared(points: &[f64]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|a| points.iter().map(|b| (a - b) * (a - b)).collect())
                .collect(),
        )
    }

    pub fn n_w(&self) -> usize {
        self.n_w
    }

    pub fn n_estimates(&self) -> usize {
        self.n_est
    }

    pub fn get(&self, w: usize, estimate: usize) -> f64 {
        self.entries[w * self.n_est + estimate]
    }

    pub fn max_loss(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }
}

/// Prior `P_W`, observation channel `W → X` and loss.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesModel {
    prior: Pmf,
    channel: Channel,
    loss: LossMatrix,
    joint: JointPmf,
}

impl BayesModel {
    pub fn new(prior: Pmf, channel: Channel, loss: LossMatrix) -> Result<Self> {
        if loss.n_w != prior.len() {
            return Err(Error::DimensionMismatch {
                expected: prior.len(),
                found: loss.n_w,
            });
        }
        let joint = joint_from_channel(&prior, &channel)?;
        Ok(BayesModel {
            prior,
            channel,
            loss,
            joint,
        })
    }

    pub fn prior(&self) -> &Pmf {
        &self.prior
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn loss(&self) -> &LossMatrix {
        &self.loss
    }

    /// The joint law of `(W, X)`.
    pub fn joint(&self) -> &JointPmf {
        &self.joint
    }

    /// The same prior and loss observed through `self.channel` followed by `next`.
    pub fn post_processed(&self, next: &Channel) -> Result<Self> {
        Self::new(
            self.prior.clone(),
            self.channel.compose(next)?,
            self.loss.clone(),
        )
    }

    /// `c_x(ŵ) = Σ_w P_WX(w, x) ℓ(w, ŵ)`, one row per observation.
    pub fn posterior_costs(&self) -> Vec<Vec<f64>> {
        (0..self.joint.n_y())
            .map(|x| {
                (0..self.loss.n_est)
                    .map(|e| {
                        (0..self.loss.n_w)
                            .map(|w| self.joint.get(w, x) * self.loss.get(w, e))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Risk of an estimator, summing the per-observation costs in index order.
pub(crate) fn risk_of(costs: &[Vec<f64>], estimator: &[usize]) -> f64 {
    costs
        .iter()
        .zip(estimator)
        .fold(0.0, |acc, (c, &e)| acc + c[e])
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Bayes risk and a Bayes estimator `φ*(x) = argmin_ŵ Σ_w P_WX(w, x) ℓ(w, ŵ)`,
/// ties going to the smallest estimate index.
pub fn bayes_risk_exact(model: &BayesModel) -> (f64, Vec<usize>) {
    let costs = model.posterior_costs();
    let estimator: Vec<usize> = costs.iter().map(|c| argmin(c)).collect();
    (risk_of(&costs, &estimator), estimator)
}

/// Minimum risk over all `|Ŵ|^{|X|}` deterministic estimators, enumerated in
/// lexicographic order (first minimizer wins).
pub fn bayes_risk_enumerated(model: &BayesModel) -> Result<(f64, Vec<usize>)> {
    let costs = model.posterior_costs();
    let (n_x, n_est) = (costs.len(), model.loss.n_est);
    let count = (n_est as u64)
        .checked_pow(n_x as u32)
        .filter(|&c| c <= MAX_ENUMERATED_ESTIMATORS)
        .ok_or(Error::GridTooLarge {
            points: (n_est as u128).saturating_pow(n_x as u32),
            limit: MAX_ENUMERATED_ESTIMATORS as u128,
        })?;
    let mut current = vec![0usize; n_x];
    let mut best = (risk_of(&costs, &current), current.clone());
    for _ in 1..count {
        // odometer: the last coordinate moves fastest
        for digit in current.iter_mut().rev() {
            *digit += 1;
            if *digit < n_est {
                break;
            }
            *digit = 0;
        }
        let r = risk_of(&costs, &current);
        if r < best.0 {
            best = (r, current.clone());
        }
    }
    Ok(best)
}

/// `L_W(ρ) = max_ŵ P_W({w : ℓ(w, ŵ) ≤ ρ})`.
pub fn small_ball_probability(prior: &Pmf, loss: &LossMatrix, rho: f64) -> f64 {
    (0..loss.n_est)
        .map(|e| {
            (0..loss.n_w)
                .filter(|&w| loss.get(w, e) <= rho)
                .map(|w| prior.get(w))
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
        .min(1.0)
}

fn require_negative(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha >= 0.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "negative",
        });
    }
    Ok(())
}

fn information(model: &BayesModel, alpha: f64) -> Result<f64> {
    Ok(sibson_mi(&model.joint, alpha, ZeroConvention::Strict)?.value)
}

/// `min_ŵ Σ_w P_W(w) ℓ(w, ŵ)^β`.
fn min_loss_moment(model: &BayesModel, beta: f64) -> f64 {
    (0..model.loss.n_est)
        .map(|e| {
            (0..model.loss.n_w)
                .filter(|&w| model.prior.get(w) > 0.0)
                .map(|w| {
                    let l = model.loss.get(w, e);
                    let t = if beta == 1.0 { l } else { l.powf(beta) };
                    model.prior.get(w) * t
                })
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// True when some estimate has zero loss on the whole prior support, which
/// collapses the moment bound to 0.
pub fn has_zero_loss_estimate(model: &BayesModel) -> bool {
    (0..model.loss.n_est).any(|e| {
        (0..model.loss.n_w).all(|w| model.prior.get(w) == 0.0 || model.loss.get(w, e) == 0.0)
    })
}

/// Moment lower bound on the Bayes risk for `α < 0` (including `−∞`).
pub fn risk_lower_bound_cor5(model: &BayesModel, alpha: f64) -> Result<ExtReal> {
    require_negative(alpha)?;
    let beta = hoelder_conjugate(alpha);
    let info = information(model, alpha)?;
    let moment = min_loss_moment(model, beta);
    if moment <= 0.0 || info == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(((moment.ln() - info) / beta).exp())
}

/// Small-ball lower bound on the Bayes risk for `α < 0` and `ρ > 0`.
pub fn risk_lower_bound_cor6(model: &BayesModel, alpha: f64, rho: f64) -> Result<ExtReal> {
    require_negative(alpha)?;
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive and finite (got {rho})"
        )));
    }
    let beta = hoelder_conjugate(alpha);
    let info = information(model, alpha)?;
    let miss = 1.0 - small_ball_probability(&model.prior, &model.loss, rho);
    if miss <= 0.0 || info == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(rho * ((miss.ln() - info) / beta).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Moment,
    SmallBall,
}

impl BoundKind {
    fn as_str(self) -> &'static str {
        match self {
            BoundKind::Moment => "moment",
            BoundKind::SmallBall => "small_ball",
        }
    }
}

/// One lower bound evaluated at one `(α, ρ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskBound {
    #[serde(with = "ext_real")]
    pub alpha: f64,
    pub rho: Option<f64>,
    pub kind: BoundKind,
    pub bound: f64,
    /// Set when some estimate has zero loss, forcing the moment bound to 0.
    pub zero_loss_estimate: bool,
}

/// The small-ball radius that maximizes the bound at one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizingRadius {
    #[serde(with = "ext_real")]
    pub alpha: f64,
    pub rho: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskReport {
    pub exact_risk: f64,
    /// `optimal_estimator[x]` is the estimate chosen on observation `x`.
    pub optimal_estimator: Vec<usize>,
    pub bounds: Vec<RiskBound>,
    pub maximizing_rho: Vec<MaximizingRadius>,
    pub best_bound: f64,
    /// `best_bound / exact_risk`, or 0 when the risk is 0.
    pub tightness: f64,
}

fn ratio(bound: f64, risk: f64) -> f64 {
    if risk > 0.0 {
        bound / risk
    } else {
        0.0
    }
}

/// Exact risk, both bound families over the `(α, ρ)` grid, and the best bound.
pub fn risk_report(model: &BayesModel, alphas: &[f64], rhos: &[f64]) -> Result<RiskReport> {
    let (exact_risk, optimal_estimator) = bayes_risk_exact(model);
    let zero_loss = has_zero_loss_estimate(model);
    let mut bounds = Vec::new();
    let mut maximizing_rho = Vec::new();
    for &alpha in alphas {
        bounds.push(RiskBound {
            alpha,
            rho: None,
            kind: BoundKind::Moment,
            bound: risk_lower_bound_cor5(model, alpha)?,
            zero_loss_estimate: zero_loss,
        });
        let mut best: Option<MaximizingRadius> = None;
        for &rho in rhos {
            let bound = risk_lower_bound_cor6(model, alpha, rho)?;
            bounds.push(RiskBound {
                alpha,
                rho: Some(rho),
                kind: BoundKind::SmallBall,
                bound,
                zero_loss_estimate: false,
            });
            if best.as_ref().is_none_or(|b| bound > b.bound) {
                best = Some(MaximizingRadius { alpha, rho, bound });
            }
        }
        maximizing_rho.extend(best);
    }
    let best_bound = bounds.iter().map(|b| b.bound).fold(0.0, f64::max);
    Ok(RiskReport {
        exact_risk,
        optimal_estimator,
        bounds,
        maximizing_rho,
        best_bound,
        tightness: ratio(best_bound, exact_risk),
    })
}

#[derive(Serialize)]
struct RiskRow {
    alpha: String,
    rho: String,
    bound_kind: &'static str,
    bound: String,
    exact_risk: String,
    tightness: String,
}

impl RiskReport {
    /// CSV with columns `alpha, rho, bound_kind, bound, exact_risk, tightness`;
    /// `rho` is empty for the moment bound.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for b in &self.bounds {
            w.serialize(RiskRow {
                alpha: fmt_num(b.alpha),
                rho: b.rho.map(fmt_num).unwrap_or_default(),
                bound_kind: b.kind.as_str(),
                bound: fmt_num(b.bound),
                exact_risk: fmt_num(self.exact_risk),
                tightness: fmt_num(ratio(b.bound, self.exact_risk)),
            })
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(channel: Channel) -> BayesModel {
        BayesModel::new(Pmf::uniform(2).unwrap(), channel, LossMatrix::zero_one(2).unwrap()).unwrap()
    }

    fn uninformative(m: usize) -> BayesModel {
        let ch = Channel::constant(m, &Pmf::new(vec![0.3, 0.7]).unwrap()).unwrap();
        BayesModel::new(Pmf::uniform(m).unwrap(), ch, LossMatrix::zero_one(m).unwrap()).unwrap()
    }

    #[test]
    fn exact_risk_examples() {
        assert_eq!(bayes_risk_exact(&binary(Channel::identity(2).unwrap())).0, 0.0);
        let bsc = binary(Channel::bsc(0.1).unwrap());
        let (r, est) = bayes_risk_exact(&bsc);
        assert!((r - 0.1).abs() < 1e-15);
        assert_eq!(est, vec![0, 1]);
        assert_eq!(bayes_risk_enumerated(&bsc).unwrap(), (r, est));
        let (r, est) = bayes_risk_exact(&uninformative(4));
        assert!((r - 0.75).abs() < 1e-15);
        assert_eq!(est, vec![0, 0]);
    }

    #[test]
    fn small_ball_examples() {
        let u = Pmf::uniform(3).unwrap();
        let l = LossMatrix::zero_one(3).unwrap();
        assert!((small_ball_probability(&u, &l, 0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(small_ball_probability(&u, &l, 1.0), 1.0);

        let prior = Pmf::new(vec![0.1, 0.2, 0.4, 0.2, 0.1]).unwrap();
        let sq = LossMatrix::squared(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        let mut prev = 0.0;
        for k in 0..=40 {
            let v = small_ball_probability(&prior, &sq, k as f64 * 0.5);
            assert!(v >= prev);
            prev = v;
        }
        assert!((small_ball_probability(&prior, &sq, 1.0) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn uninformative_bounds() {
        let m = uninformative(4);
        // −∞ moment bound: exp(0)·min E[ℓ] = 0.75
        let b = risk_lower_bound_cor5(&m, f64::NEG_INFINITY).unwrap();
        assert!((b - 0.75).abs() < 1e-12);
        let b = risk_lower_bound_cor6(&m, f64::NEG_INFINITY, 0.5).unwrap();
        assert!((b - 0.375).abs() < 1e-12);
        // 0-1 loss: ℓ^β = ℓ, so every order gives 0.75^{1/β} ≤ 0.75
        let b = risk_lower_bound_cor5(&m, -2.0).unwrap();
        assert!((b - 0.75f64.powf(1.5)).abs() < 1e-12);
        let report = risk_report(&m, &[f64::NEG_INFINITY, -2.0], &[0.5]).unwrap();
        assert!((report.tightness - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bsc_bounds() {
        let m = binary(Channel::bsc(0.1).unwrap());
        let mut prev = 0.0;
        for a in [-0.25, -0.5, -1.0, -2.0, -4.0, -16.0, f64::NEG_INFINITY] {
            let b = risk_lower_bound_cor5(&m, a).unwrap();
            assert!(b > 0.0 && b <= 0.1 + 1e-12, "{a} {b}");
            assert!(b >= prev - 1e-12);
            prev = b;
            for rho in [0.25, 0.5, 0.99, 1.0] {
                assert!(risk_lower_bound_cor6(&m, a, rho).unwrap() <= 0.1 + 1e-12);
            }
            assert_eq!(risk_lower_bound_cor6(&m, a, 1.0).unwrap(), 0.0);
        }
        // at −∞ the moment bound is 0.5·exp(−ln 5) = 0.1, the exact risk
        assert!((prev - 0.1).abs() < 1e-12);
        let r = risk_report(&m, &[-1.0, -4.0], &[0.25, 0.5, 0.75]).unwrap();
        assert!(r.tightness > 0.0 && r.tightness <= 1.0);
        assert_eq!(r.maximizing_rho.len(), 2);
        assert!(r.maximizing_rho.iter().all(|m| m.rho == 0.75));
    }

    #[test]
    fn noiseless_bounds_vanish() {
        let m = binary(Channel::identity(2).unwrap());
        let r = risk_report(&m, &[-2.0, f64::NEG_INFINITY], &[0.5]).unwrap();
        assert_eq!(r.exact_risk, 0.0);
        assert!(r.bounds.iter().all(|b| b.bound == 0.0));
        assert_eq!(r.tightness, 0.0);
    }

    #[test]
    fn zero_loss_estimate_flag() {
        let loss = LossMatrix::new(vec![vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let m = BayesModel::new(Pmf::uniform(2).unwrap(), Channel::bsc(0.2).unwrap(), loss).unwrap();
        assert!(has_zero_loss_estimate(&m));
        assert_eq!(risk_lower_bound_cor5(&m, -1.0).unwrap(), 0.0);
        let r = risk_report(&m, &[-1.0], &[0.5]).unwrap();
        assert!(r.bounds[0].zero_loss_estimate);
    }

    #[test]
    fn errors_and_csv() {
        let m = binary(Channel::bsc(0.1).unwrap());
        assert!(risk_lower_bound_cor5(&m, 0.5).is_err());
        assert!(risk_lower_bound_cor6(&m, -1.0, 0.0).is_err());
        assert!(BayesModel::new(
            Pmf::uniform(3).unwrap(),
            Channel::bsc(0.1).unwrap(),
            LossMatrix::zero_one(3).unwrap()
        )
        .is_err());
        assert!(LossMatrix::new(vec![vec![-1.0]]).is_err());
        let csv = risk_report(&m, &[-1.0], &[0.5]).unwrap().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "alpha,rho,bound_kind,bound,exact_risk,tightness");
        assert!(lines.next().unwrap().starts_with("-1,,moment,"));
        assert!(lines.next().unwrap().starts_with("-1,0.5,small_ball,"));
    }

    #[test]
    fn enumeration_guard() {
        let ch = Channel::constant(2, &Pmf::uniform(30).unwrap()).unwrap();
        let m = BayesModel::new(Pmf::uniform(2).unwrap(), ch, LossMatrix::zero_one(2).unwrap()).unwrap();
        assert!(matches!(bayes_risk_enumerated(&m), Err(Error::GridTooLarge { .. })));
    }
}
