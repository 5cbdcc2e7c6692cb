//! Brute-force cross-checks.
//!
//! [`variational_verify`] enumerates a lattice on the output simplex and
//! compares the best `D_α(P_XY‖P_X Q_Y)` it finds against the closed form of
//! `I_α`. [`run_property_suite`] samples random instances and records every
//! violation of the inequalities and identities the library relies on;
//! violations are data, never panics.
//!
//! Every instance is reproducible from the seed stored with its violation.
//! [`Mutant`] swaps one computation for a deliberately wrong one so tests can
//! confirm that each property is able to fail.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bayes::{
    bayes_risk_enumerated, bayes_risk_exact, risk_lower_bound_cor5, risk_lower_bound_cor6,
    small_ball_probability, BayesModel, LossMatrix,
};
use crate::bounds::{
    event_probability_lower_bound, functional_lower_bound, functional_upper_bound,
    reverse_holder_bound, table1_report, BoundDirection, BoundReport, EventSet, FunctionOnJoint,
};
use crate::error::{Error, Result};
use crate::numeric::power_mean;
use crate::order::{ext_real, hoelder_conjugate, AlphaOrder, ExtReal, ZeroConvention};
use crate::prob::{joint_from_channel, Channel, JointPmf, Pmf};
use crate::renyi::divergence;
use crate::sibson::{maximal_cost_leakage, optimal_q_y, sibson_exp_transform, sibson_mi};

/// Largest lattice [`variational_verify`] will enumerate.
pub const MAX_GRID_POINTS: u128 = 10_000_000;
/// Smallest accepted lattice resolution.
pub const MIN_RESOLUTION: u32 = 10;
/// Resolution used when none is given.
pub const DEFAULT_RESOLUTION: u32 = 60;

/// Lattice points `k/resolution` on the probability simplex of dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexGrid {
    dim: usize,
    resolution: u32,
}

impl SimplexGrid {
    pub fn new(dim: usize, resolution: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        if resolution == 0 {
            return Err(Error::InvalidParameter("resolution must be positive".into()));
        }
        Ok(SimplexGrid { dim, resolution })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// `C(resolution + dim − 1, dim − 1)`.
    pub fn point_count(&self) -> u128 {
        let n = self.resolution as u128 + self.dim as u128 - 1;
        let k = (self.dim as u128 - 1).min(self.resolution as u128);
        (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
    }

    pub fn points(&self) -> GridPoints {
        let mut counts = vec![0; self.dim];
        counts[0] = self.resolution;
        GridPoints {
            counts: Some(counts),
            resolution: self.resolution,
        }
    }
}

/// Iterator over the lattice, in reverse lexicographic order of the counts.
#[derive(Debug, Clone)]
pub struct GridPoints {
    counts: Option<Vec<u32>>,
    resolution: u32,
}

impl Iterator for GridPoints {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        let counts = self.counts.as_mut()?;
        let r = self.resolution as f64;
        let point = counts.iter().map(|&c| c as f64 / r).collect();
        let d = counts.len();
        let tail = counts[d - 1];
        counts[d - 1] = 0;
        match (0..d - 1).rev().find(|&j| counts[j] > 0) {
            Some(j) => {
                counts[j] -= 1;
                counts[j + 1] = tail + 1;
            }
            None => self.counts = None,
        }
        Some(point)
    }
}

/// Outcome of a lattice search against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationalReport {
    #[serde(with = "ext_real")]
    pub alpha: f64,
    pub resolution: u32,
    pub points: u128,
    /// Max over the lattice of `D_α(P_XY‖P_X Q)` for `α < 0`, min for `α > 0`.
    #[serde(with = "ext_real")]
    pub grid_best: ExtReal,
    /// `I_α(X, Y)`.
    #[serde(with = "ext_real")]
    pub closed_form: ExtReal,
    /// How far the lattice optimum stays on the feasible side of `∓I_α`;
    /// negative values mean the lattice beat the closed form.
    #[serde(with = "ext_real")]
    pub gap: ExtReal,
    pub grid_argmax: Pmf,
    /// `‖grid_argmax − Q*_Y‖₁` when `Q*_Y` exists.
    pub l1_to_optimal: Option<f64>,
}

/// Exhaustive lattice search over `Q_Y` for a finite order outside `{0, 1}`.
pub fn variational_verify(
    joint: &JointPmf,
    alpha: f64,
    resolution: u32,
    conv: ZeroConvention,
) -> Result<VariationalReport> {
    let order = AlphaOrder::new(alpha)?;
    if !alpha.is_finite() || alpha == 0.0 || alpha == 1.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "finite, not 0 or 1",
        });
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "resolution {resolution} is below {MIN_RESOLUTION}"
        )));
    }
    let grid = SimplexGrid::new(joint.n_y(), resolution)?;
    let points = grid.point_count();
    if points > MAX_GRID_POINTS {
        return Err(Error::GridTooLarge {
            points,
            limit: MAX_GRID_POINTS,
        });
    }
    let negative = alpha < 0.0;
    let better = |a: f64, b: f64| if negative { a > b } else { a < b };
    let p = joint.as_flat();
    let px = joint.p_x();
    let mut reference = vec![0.0; p.len()];
    let mut best: Option<(f64, Vec<f64>)> = None;
    for q in grid.points() {
        for (x, &m) in px.iter().enumerate() {
            for (y, &qy) in q.iter().enumerate() {
                reference[x * q.len() + y] = m * qy;
            }
        }
        let d = divergence(p, &reference, order, conv);
        if best.as_ref().is_none_or(|(b, _)| better(d, *b)) {
            best = Some((d, q));
        }
    }
    let (grid_best, argmax) = best.expect("the lattice is never empty");
    let mi = sibson_mi(joint, alpha, conv)?;
    let gap = if negative {
        -mi.value - grid_best
    } else {
        grid_best - mi.value
    };
    let l1_to_optimal = mi
        .optimal_q
        .as_ref()
        .map(|q| q.probs().iter().zip(&argmax).map(|(a, b)| (a - b).abs()).sum());
    Ok(VariationalReport {
        alpha,
        resolution,
        points,
        grid_best,
        closed_form: mi.value,
        gap: if gap.is_nan() { 0.0 } else { gap },
        grid_argmax: Pmf::new(argmax)?,
        l1_to_optimal,
    })
}

fn exponential_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.sample::<f64, _>(Open01).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

fn random_pmf(rng: &mut ChaCha8Rng, n: usize) -> Pmf {
    Pmf::new(exponential_weights(rng, n)).expect("normalized draw")
}

fn random_channel(rng: &mut ChaCha8Rng, n_in: usize, n_out: usize) -> Channel {
    let flat = (0..n_in).flat_map(|_| exponential_weights(rng, n_out)).collect();
    Channel::from_flat(n_in, n_out, flat).expect("normalized rows")
}

/// A strictly positive joint drawn uniformly from the simplex (normalized
/// exponentials of uniform draws), fixed by `seed`.
pub fn random_instance(seed: u64, n_x: usize, n_y: usize) -> Result<JointPmf> {
    random_sparse_instance(seed, n_x, n_y, 0.0)
}

/// Like [`random_instance`], but each cell is zeroed with probability
/// `sparsity` before renormalizing; at least one cell survives.
pub fn random_sparse_instance(seed: u64, n_x: usize, n_y: usize, sparsity: f64) -> Result<JointPmf> {
    if n_x == 0 || n_y == 0 {
        return Err(Error::Empty);
    }
    if !(0.0..1.0).contains(&sparsity) {
        return Err(Error::InvalidParameter(format!(
            "sparsity {sparsity} is outside [0, 1)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sparse_joint(&mut rng, n_x, n_y, sparsity))
}

fn sparse_joint(rng: &mut ChaCha8Rng, n_x: usize, n_y: usize, sparsity: f64) -> JointPmf {
    let n = n_x * n_y;
    let mut w: Vec<f64> = (0..n).map(|_| -rng.sample::<f64, _>(Open01).ln()).collect();
    if sparsity > 0.0 {
        let keep = rng.random_range(0..n);
        for (i, v) in w.iter_mut().enumerate() {
            if i != keep && rng.random_bool(sparsity) {
                *v = 0.0;
            }
        }
    }
    let total: f64 = w.iter().sum();
    JointPmf::from_flat(n_x, n_y, w.into_iter().map(|v| v / total).collect())
        .expect("normalized draw")
}

/// A deliberately wrong computation, for checking that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutant {
    /// `D_α ↦ −D_α`.
    RenyiSignFlip,
    /// Prefactor `1/α` in place of `1/(α−1)`.
    RenyiWrongPrefactor,
    /// `I_α ↦ −I_α`.
    SibsonSignFlip,
    /// `I_α ↦ 2 I_α`.
    SibsonDoubled,
    /// Lower bounds doubled, upper bounds halved.
    BoundInflated,
    /// Reported inequality direction reversed.
    BoundDirectionFlip,
    /// The functional lower bound uses `1/β` where `β` belongs.
    BoundExponentFlip,
    /// The estimator picks the worst estimate on each observation.
    RiskArgmax,
    /// The moment bound takes the max over estimates instead of the min.
    MomentBoundMax,
    /// Information enters the risk bounds with the wrong sign.
    RiskInfoSignFlip,
    /// The small-ball bound divides by `ρ` instead of multiplying.
    SmallBallRadiusInverted,
}

impl Mutant {
    pub const ALL: [Mutant; 11] = [
        Mutant::RenyiSignFlip,
        Mutant::RenyiWrongPrefactor,
        Mutant::SibsonSignFlip,
        Mutant::SibsonDoubled,
        Mutant::BoundInflated,
        Mutant::BoundDirectionFlip,
        Mutant::BoundExponentFlip,
        Mutant::RiskArgmax,
        Mutant::MomentBoundMax,
        Mutant::RiskInfoSignFlip,
        Mutant::SmallBallRadiusInverted,
    ];
}

/// The computations under test, optionally with one of them broken.
struct Engine {
    mutant: Option<Mutant>,
}

impl Engine {
    fn is(&self, m: Mutant) -> bool {
        self.mutant == Some(m)
    }

    fn renyi(&self, p: &[f64], q: &[f64], alpha: f64) -> f64 {
        let d = divergence(p, q, AlphaOrder::new(alpha).expect("order"), ZeroConvention::Strict);
        if self.is(Mutant::RenyiSignFlip) {
            -d
        } else if self.is(Mutant::RenyiWrongPrefactor) && alpha.is_finite() && alpha != 0.0 {
            d * (alpha - 1.0) / alpha
        } else {
            d
        }
    }

    fn sibson(&self, joint: &JointPmf, alpha: f64) -> f64 {
        let v = sibson_mi(joint, alpha, ZeroConvention::Strict)
            .expect("order")
            .value;
        if self.is(Mutant::SibsonSignFlip) {
            -v
        } else if self.is(Mutant::SibsonDoubled) {
            2.0 * v
        } else {
            v
        }
    }

    fn bound(&self, mut r: BoundReport) -> BoundReport {
        if self.is(Mutant::BoundInflated) {
            r.bound *= match r.direction {
                BoundDirection::AtLeast => 2.0,
                BoundDirection::AtMost => 0.5,
            };
            r.slack = match r.direction {
                BoundDirection::AtLeast => r.lhs - r.bound,
                BoundDirection::AtMost => r.bound - r.lhs,
            };
        }
        if self.is(Mutant::BoundDirectionFlip) {
            r.direction = match r.direction {
                BoundDirection::AtLeast => BoundDirection::AtMost,
                BoundDirection::AtMost => BoundDirection::AtLeast,
            };
        }
        r
    }

    fn functional_lower(&self, joint: &JointPmf, f: &FunctionOnJoint, alpha: f64) -> BoundReport {
        let mut r = functional_lower_bound(joint, f, alpha).expect("valid order");
        if self.is(Mutant::BoundExponentFlip) {
            let wrong = 1.0 / hoelder_conjugate(alpha);
            let h = (0..joint.n_y())
                .filter(|&y| joint.p_y()[y] > 0.0)
                .map(|y| {
                    let col: Vec<f64> = (0..joint.n_x()).map(|x| f.get(x, y)).collect();
                    power_mean(joint.p_x(), &col, wrong)
                })
                .fold(f64::INFINITY, f64::min);
            r.multiplicative_term = h;
            r.bound = h * r.info_term;
            r.slack = r.lhs - r.bound;
        }
        self.bound(r)
    }

    fn exact_risk(&self, model: &BayesModel) -> f64 {
        if self.is(Mutant::RiskArgmax) {
            let costs = model.posterior_costs();
            let worst: Vec<usize> = costs
                .iter()
                .map(|c| {
                    (0..c.len())
                        .fold(0, |b, i| if c[i] > c[b] { i } else { b })
                })
                .collect();
            return crate::bayes::risk_of(&costs, &worst);
        }
        bayes_risk_exact(model).0
    }

    fn moment_bound(&self, model: &BayesModel, alpha: f64) -> f64 {
        let base = risk_lower_bound_cor5(model, alpha).expect("negative order");
        if !(self.is(Mutant::MomentBoundMax) || self.is(Mutant::RiskInfoSignFlip)) {
            return base;
        }
        let beta = hoelder_conjugate(alpha);
        let info = sibson_mi(model.joint(), alpha, ZeroConvention::Strict)
            .expect("order")
            .value;
        let loss = model.loss();
        let moments = (0..loss.n_estimates()).map(|e| {
            (0..loss.n_w())
                .map(|w| model.prior().get(w) * loss.get(w, e).powf(beta))
                .sum::<f64>()
        });
        let (m, sign) = if self.is(Mutant::MomentBoundMax) {
            (moments.fold(0.0, f64::max), -1.0)
        } else {
            (moments.fold(f64::INFINITY, f64::min), 1.0)
        };
        ((m.ln() + sign * info) / beta).exp()
    }

    fn small_ball_bound(&self, model: &BayesModel, alpha: f64, rho: f64) -> f64 {
        let base = risk_lower_bound_cor6(model, alpha, rho).expect("valid arguments");
        if self.is(Mutant::SmallBallRadiusInverted) {
            return base / (rho * rho);
        }
        if self.is(Mutant::RiskInfoSignFlip) {
            let beta = hoelder_conjugate(alpha);
            let info = sibson_mi(model.joint(), alpha, ZeroConvention::Strict)
                .expect("order")
                .value;
            return base * (2.0 * info / beta).exp();
        }
        base
    }
}

/// Outcome of one property over all sampled instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property_name: String,
    pub instances_tested: usize,
    pub tolerance: f64,
    /// `(instance seed, magnitude)` for every instance beyond tolerance.
    pub violations: Vec<(u64, f64)>,
    /// Largest discrepancy seen, violating or not.
    pub max_violation: f64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Upper bounds on the alphabet sizes of sampled instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxDims {
    pub n_x: usize,
    pub n_y: usize,
    pub n_z: usize,
}

impl Default for MaxDims {
    fn default() -> Self {
        MaxDims {
            n_x: 4,
            n_y: 4,
            n_z: 4,
        }
    }
}

/// Settings for [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_dims: MaxDims,
    pub mutant: Option<Mutant>,
}

struct Ctx<'a> {
    engine: &'a Engine,
    rng: ChaCha8Rng,
    dims: MaxDims,
}

impl Ctx<'_> {
    fn dim(&mut self, max: usize) -> usize {
        if max <= 2 {
            max.max(1)
        } else {
            self.rng.random_range(2..=max)
        }
    }

    fn pmf(&mut self, n: usize) -> Pmf {
        random_pmf(&mut self.rng, n)
    }

    fn channel(&mut self, n_in: usize, n_out: usize) -> Channel {
        random_channel(&mut self.rng, n_in, n_out)
    }

    fn joint(&mut self) -> JointPmf {
        let (n_x, n_y) = (self.dim(self.dims.n_x), self.dim(self.dims.n_y));
        sparse_joint(&mut self.rng, n_x, n_y, 0.0)
    }

    /// A joint that is sparse a quarter of the time.
    fn maybe_sparse_joint(&mut self) -> JointPmf {
        let (n_x, n_y) = (self.dim(self.dims.n_x), self.dim(self.dims.n_y));
        let sparsity = if self.rng.random_bool(0.25) { 0.3 } else { 0.0 };
        sparse_joint(&mut self.rng, n_x, n_y, sparsity)
    }

    /// A negative order with `|α|` log-uniform on `[0.05, 50]`.
    fn negative_alpha(&mut self) -> f64 {
        -(self.rng.random_range(0.05f64.ln()..50f64.ln())).exp()
    }

    fn below_one_alpha(&mut self) -> f64 {
        self.rng.random_range(0.05..0.95)
    }

    fn above_one_alpha(&mut self) -> f64 {
        1.0 + self.rng.random_range(0.05f64.ln()..20f64.ln()).exp()
    }

    fn lower_regime_alpha(&mut self) -> f64 {
        if self.rng.random_bool(0.5) {
            self.negative_alpha()
        } else {
            self.below_one_alpha()
        }
    }

    /// Values in `[0.05, 2]`, with a zero cell a fifth of the time.
    fn function(&mut self, n_x: usize, n_y: usize) -> FunctionOnJoint {
        let mut rows: Vec<Vec<f64>> = (0..n_x)
            .map(|_| (0..n_y).map(|_| self.rng.random_range(0.05..2.0)).collect())
            .collect();
        if self.rng.random_bool(0.2) {
            rows[self.rng.random_range(0..n_x)][self.rng.random_range(0..n_y)] = 0.0;
        }
        FunctionOnJoint::new(rows).expect("non-negative finite")
    }

    /// Prior, channel and a loss in `[0, 2]` with a zero in every row.
    fn model(&mut self, max_w: usize, max_x: usize, max_estimators: u64) -> BayesModel {
        loop {
            let n_w = self.dim(max_w);
            let n_x = self.dim(max_x);
            let n_est = self.dim(max_w);
            if (n_est as u64).pow(n_x as u32) > max_estimators {
                continue;
            }
            let prior = self.pmf(n_w);
            let channel = self.channel(n_w, n_x);
            let rows = (0..n_w)
                .map(|_| {
                    let zero = self.rng.random_range(0..n_est);
                    (0..n_est)
                        .map(|e| {
                            if e == zero {
                                0.0
                            } else {
                                self.rng.random_range(0.0..2.0)
                            }
                        })
                        .collect()
                })
                .collect();
            let loss = LossMatrix::new(rows).expect("valid loss");
            return BayesModel::new(prior, channel, loss).expect("consistent model");
        }
    }
}

/// Amount by which `a` exceeds `b`; equal infinities count as equal and
/// NaN counts as an infinite violation.
fn excess(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else if a <= b {
        0.0
    } else if a.is_infinite() || b.is_infinite() {
        f64::INFINITY
    } else {
        a - b
    }
}

fn distance(a: f64, b: f64) -> f64 {
    excess(a, b).max(excess(b, a))
}

fn lower_bound_violation(r: &BoundReport) -> f64 {
    if r.direction != BoundDirection::AtLeast {
        return f64::INFINITY;
    }
    excess(r.bound, r.lhs)
}

fn upper_bound_violation(r: &BoundReport) -> f64 {
    if r.direction != BoundDirection::AtMost {
        return f64::INFINITY;
    }
    excess(r.lhs, r.bound)
}

type Check = fn(&mut Ctx) -> f64;

struct Property {
    name: &'static str,
    tolerance: f64,
    check: Check,
}

const ORDER_GRID: [f64; 17] = [
    f64::NEG_INFINITY,
    -50.0,
    -10.0,
    -2.0,
    -1.0,
    -0.5,
    -0.1,
    0.0,
    0.1,
    0.5,
    0.9,
    1.0,
    1.1,
    2.0,
    10.0,
    50.0,
    f64::INFINITY,
];

fn renyi_nonpositivity(c: &mut Ctx) -> f64 {
    let n = c.dim(c.dims.n_x.max(c.dims.n_y));
    let (p, q, a) = (c.pmf(n), c.pmf(n), c.negative_alpha());
    excess(c.engine.renyi(p.probs(), q.probs(), a), 0.0)
}

fn renyi_order_monotonicity(c: &mut Ctx) -> f64 {
    let n = c.dim(c.dims.n_x.max(c.dims.n_y));
    let (p, q) = (c.pmf(n), c.pmf(n));
    let d: Vec<f64> = ORDER_GRID
        .iter()
        .map(|&a| c.engine.renyi(p.probs(), q.probs(), a))
        .collect();
    d.windows(2).map(|w| excess(w[0], w[1])).fold(0.0, f64::max)
}

fn renyi_concavity_first_argument(c: &mut Ctx) -> f64 {
    let n = c.dim(c.dims.n_x.max(c.dims.n_y));
    let (v0, v1, mu) = (c.pmf(n), c.pmf(n), c.pmf(n));
    let lambda = c.rng.random_range(0.0..1.0);
    let a = c.negative_alpha();
    let mix = Pmf::mix(lambda, &v1, &v0).expect("valid mixture");
    let e = c.engine;
    let chord = lambda * e.renyi(v1.probs(), mu.probs(), a)
        + (1.0 - lambda) * e.renyi(v0.probs(), mu.probs(), a);
    excess(chord, e.renyi(mix.probs(), mu.probs(), a))
}

fn renyi_reverse_dpi(c: &mut Ctx) -> f64 {
    let n = c.dim(c.dims.n_x);
    let m = c.dim(c.dims.n_y);
    let (nu, mu) = (c.pmf(n), c.pmf(n));
    let k = c.channel(n, m);
    let a = c.negative_alpha();
    let (knu, kmu) = (
        crate::prob::push_forward(&nu, &k).expect("dims"),
        crate::prob::push_forward(&mu, &k).expect("dims"),
    );
    excess(
        c.engine.renyi(nu.probs(), mu.probs(), a),
        c.engine.renyi(knu.probs(), kmu.probs(), a),
    )
}

fn renyi_skew_symmetry(c: &mut Ctx) -> f64 {
    let n = c.dim(c.dims.n_x.max(c.dims.n_y));
    let (nu, mu) = (c.pmf(n), c.pmf(n));
    let a = match c.rng.random_range(0..3) {
        0 => c.negative_alpha().max(-20.0),
        1 => c.below_one_alpha(),
        _ => c.above_one_alpha(),
    };
    let lhs = c.engine.renyi(nu.probs(), mu.probs(), a);
    let rhs = a / (1.0 - a) * c.engine.renyi(mu.probs(), nu.probs(), 1.0 - a);
    distance(lhs, rhs)
}

fn sibson_nonnegativity(c: &mut Ctx) -> f64 {
    let j = c.maybe_sparse_joint();
    let a = c.negative_alpha();
    let i = c.engine.sibson(&j, a);
    let mut worst = excess(0.0, i);
    let product = j.product_of_marginals();
    worst = worst.max(excess(c.engine.sibson(&product, a), 0.0));
    let tv = j.distance_from_independence();
    if tv >= 0.01 && i.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        worst = worst.max(tv);
    }
    worst
}

fn sibson_order_monotonicity(c: &mut Ctx) -> f64 {
    let j = c.maybe_sparse_joint();
    let grid = [-0.1, -0.3, -1.0, -3.0, -10.0, -30.0, -100.0, f64::NEG_INFINITY];
    let v: Vec<f64> = grid.iter().map(|&a| c.engine.sibson(&j, a)).collect();
    v.windows(2).map(|w| excess(w[0], w[1])).fold(0.0, f64::max)
}

fn sibson_leakage_cap(c: &mut Ctx) -> f64 {
    let j = c.maybe_sparse_joint();
    let a = c.negative_alpha();
    excess(c.engine.sibson(&j, a), maximal_cost_leakage(&j))
}

fn sibson_dpi(c: &mut Ctx) -> f64 {
    let (n_x, n_y, n_z) = (c.dim(c.dims.n_x), c.dim(c.dims.n_y), c.dim(c.dims.n_z));
    let px = c.pmf(n_x);
    let k1 = c.channel(n_x, n_y);
    let k2 = c.channel(n_y, n_z);
    let a = c.negative_alpha();
    let xy = joint_from_channel(&px, &k1).expect("dims");
    let xz = joint_from_channel(&px, &k1.compose(&k2).expect("dims")).expect("dims");
    let py = Pmf::new(xy.p_y().to_vec()).expect("marginal");
    let yz = joint_from_channel(&py, &k2).expect("dims");
    let e = c.engine;
    excess(e.sibson(&xz, a), e.sibson(&xy, a).min(e.sibson(&yz, a)))
}

fn sibson_channel_convexity(c: &mut Ctx) -> f64 {
    let (n_x, n_y) = (c.dim(c.dims.n_x), c.dim(c.dims.n_y));
    let px = c.pmf(n_x);
    let (k0, k1) = (c.channel(n_x, n_y), c.channel(n_x, n_y));
    let lambda = c.rng.random_range(0.0..1.0);
    let a = c.negative_alpha();
    let kl = Channel::mix(lambda, &k1, &k0).expect("same shape");
    let joints = [&k0, &k1, &kl].map(|k| joint_from_channel(&px, k).expect("dims"));
    let s = joints
        .each_ref()
        .map(|j| sibson_exp_transform(j, a, ZeroConvention::Strict).expect("negative order"));
    let i = joints.each_ref().map(|j| c.engine.sibson(j, a));
    let transform = excess(lambda * s[1] + (1.0 - lambda) * s[0], s[2]);
    let info = excess(i[2], lambda * i[1] + (1.0 - lambda) * i[0]);
    transform.max(info)
}

fn product_reference(joint: &JointPmf, q: &[f64]) -> Vec<f64> {
    joint
        .p_x()
        .iter()
        .flat_map(|&m| q.iter().map(move |&v| m * v))
        .collect()
}

fn sibson_variational_identity(c: &mut Ctx) -> f64 {
    let j = c.joint();
    let a = c.negative_alpha();
    let q = optimal_q_y(&j, a, ZeroConvention::Strict).expect("positive joint");
    let d = c.engine.renyi(j.as_flat(), &product_reference(&j, q.probs()), a);
    distance(d, -c.engine.sibson(&j, a))
}

fn sibson_variational_upper(c: &mut Ctx) -> f64 {
    let j = c.joint();
    let a = c.negative_alpha();
    let target = -c.engine.sibson(&j, a);
    let optimal = optimal_q_y(&j, a, ZeroConvention::Strict).expect("positive joint");
    (0..20)
        .map(|k| {
            // random references, some of them close to the optimum
            let q = random_pmf(&mut c.rng, j.n_y());
            let t = if k % 2 == 0 { 1.0 } else { 0.05 };
            let q = Pmf::mix(t, &q, &optimal).expect("valid mixture");
            excess(c.engine.renyi(j.as_flat(), &product_reference(&j, q.probs()), a), target)
        })
        .fold(0.0, f64::max)
}

fn sibson_cost_leakage_limit(c: &mut Ctx) -> f64 {
    let j = c.joint();
    distance(c.engine.sibson(&j, -1e4), maximal_cost_leakage(&j))
}

fn bounds_reverse_holder(c: &mut Ctx) -> f64 {
    let j = c.joint();
    let f = c.function(j.n_x(), j.n_y());
    let (a, ap) = (c.lower_regime_alpha(), c.lower_regime_alpha());
    let r = reverse_holder_bound(&j, &f, a, ap).expect("valid orders");
    lower_bound_violation(&c.engine.bound(r))
}

fn bounds_functional_lower(c: &mut Ctx) -> f64 {
    let j = c.maybe_sparse_joint();
    let f = c.function(j.n_x(), j.n_y());
    let a = if c.rng.random_bool(0.1) {
        f64::NEG_INFINITY
    } else {
        c.lower_regime_alpha()
    };
    lower_bound_violation(&c.engine.functional_lower(&j, &f, a))
}

fn bounds_event_exhaustive(c: &mut Ctx) -> f64 {
    let j = sparse_joint(&mut c.rng, 2, 3, 0.0);
    let mut worst: f64 = 0.0;
    for a in [-4.0, -1.0, -0.25, f64::NEG_INFINITY] {
        for mask in 0..64u64 {
            let e = EventSet::from_mask(2, 3, mask);
            let r = event_probability_lower_bound(&j, &e, a).expect("negative order");
            worst = worst.max(lower_bound_violation(&c.engine.bound(r)));
        }
    }
    worst
}

fn bounds_functional_upper(c: &mut Ctx) -> f64 {
    let j = c.maybe_sparse_joint();
    let f = c.function(j.n_x(), j.n_y());
    let a = if c.rng.random_bool(0.1) {
        f64::INFINITY
    } else {
        c.above_one_alpha()
    };
    let r = functional_upper_bound(&j, &f, a).expect("valid order");
    upper_bound_violation(&c.engine.bound(r))
}

fn bounds_direction(c: &mut Ctx) -> f64 {
    let j = c.joint();
    let f = c.function(j.n_x(), j.n_y());
    let alphas = [c.negative_alpha(), c.below_one_alpha(), c.above_one_alpha()];
    let expected = [
        BoundDirection::AtLeast,
        BoundDirection::AtLeast,
        BoundDirection::AtMost,
    ];
    let rows = table1_report(&j, &f, &alphas).expect("valid orders");
    let wrong = rows
        .into_iter()
        .zip(expected)
        .filter(|(r, d)| c.engine.bound(r.clone()).direction != *d)
        .count();
    wrong as f64
}

fn bounds_lower_limit(c: &mut Ctx) -> f64 {
    let j = c.joint();
    let f = c.function(j.n_x(), j.n_y());
    let a = c.lower_regime_alpha();
    let limit = c.engine.functional_lower(&j, &f, a);
    let near = reverse_holder_bound(&j, &f, a, 1.0 - 1e-6).expect("valid orders");
    distance(limit.bound, near.bound)
}

const RISK_ORDERS: [f64; 4] = [-0.25, -1.0, -4.0, f64::NEG_INFINITY];

fn radii(model: &BayesModel) -> Vec<f64> {
    let top = model.loss().max_loss() + 0.2;
    (1..=24).map(|k| k as f64 * top / 24.0).collect()
}

fn bayes_soundness(c: &mut Ctx) -> f64 {
    let m = c.model(6, 6, u64::MAX);
    let risk = c.engine.exact_risk(&m);
    let extra = c.negative_alpha();
    let mut worst: f64 = 0.0;
    for a in RISK_ORDERS.into_iter().chain([extra]) {
        worst = worst.max(excess(c.engine.moment_bound(&m, a), risk));
        for rho in radii(&m) {
            worst = worst.max(excess(c.engine.small_ball_bound(&m, a, rho), risk));
        }
    }
    worst
}

fn bayes_engine_exactness(c: &mut Ctx) -> f64 {
    let m = c.model(6, 6, 4096);
    let enumerated = bayes_risk_enumerated(&m).expect("small estimator space").0;
    let pointwise = c.engine.exact_risk(&m);
    if pointwise == enumerated {
        0.0
    } else {
        (pointwise - enumerated).abs()
    }
}

fn bayes_data_processing(c: &mut Ctx) -> f64 {
    let m = c.model(6, 6, u64::MAX);
    let n_z = c.dim(c.dims.n_z);
    let post = c.channel(m.channel().n_out(), n_z);
    let z = m.post_processed(&post).expect("dims");
    let mut worst: f64 = 0.0;
    for a in RISK_ORDERS {
        worst = worst.max(excess(c.engine.moment_bound(&m, a), c.engine.moment_bound(&z, a)));
        for rho in radii(&m) {
            worst = worst.max(excess(
                c.engine.small_ball_bound(&m, a, rho),
                c.engine.small_ball_bound(&z, a, rho),
            ));
        }
    }
    worst
}

fn bayes_small_ball_radius(c: &mut Ctx) -> f64 {
    let m = c.model(6, 6, u64::MAX);
    let rhos = radii(&m);
    let mut worst: f64 = 0.0;
    for a in RISK_ORDERS {
        let values: Vec<(f64, f64)> = rhos
            .iter()
            .map(|&rho| {
                (
                    small_ball_probability(m.prior(), m.loss(), rho),
                    c.engine.small_ball_bound(&m, a, rho),
                )
            })
            .collect();
        for w in values.windows(2) {
            if w[0].0 == w[1].0 {
                worst = worst.max(excess(w[0].1, w[1].1));
            }
        }
    }
    worst
}

const PROPERTIES: &[Property] = &[
    Property { name: "renyi_nonpositivity", tolerance: 1e-12, check: renyi_nonpositivity },
    Property { name: "renyi_order_monotonicity", tolerance: 1e-10, check: renyi_order_monotonicity },
    Property { name: "renyi_concavity_first_argument", tolerance: 1e-10, check: renyi_concavity_first_argument },
    Property { name: "renyi_reverse_dpi", tolerance: 1e-10, check: renyi_reverse_dpi },
    Property { name: "renyi_skew_symmetry", tolerance: 1e-10, check: renyi_skew_symmetry },
    Property { name: "sibson_nonnegativity", tolerance: 1e-12, check: sibson_nonnegativity },
    Property { name: "sibson_order_monotonicity", tolerance: 1e-10, check: sibson_order_monotonicity },
    Property { name: "sibson_leakage_cap", tolerance: 1e-10, check: sibson_leakage_cap },
    Property { name: "sibson_dpi", tolerance: 1e-10, check: sibson_dpi },
    Property { name: "sibson_channel_convexity", tolerance: 1e-10, check: sibson_channel_convexity },
    Property { name: "sibson_variational_identity", tolerance: 1e-10, check: sibson_variational_identity },
    Property { name: "sibson_variational_upper", tolerance: 1e-9, check: sibson_variational_upper },
    Property { name: "sibson_cost_leakage_limit", tolerance: 1e-3, check: sibson_cost_leakage_limit },
    Property { name: "bounds_reverse_holder", tolerance: 1e-10, check: bounds_reverse_holder },
    Property { name: "bounds_functional_lower", tolerance: 1e-10, check: bounds_functional_lower },
    Property { name: "bounds_event_exhaustive", tolerance: 1e-10, check: bounds_event_exhaustive },
    Property { name: "bounds_functional_upper", tolerance: 1e-10, check: bounds_functional_upper },
    Property { name: "bounds_direction", tolerance: 0.0, check: bounds_direction },
    Property { name: "bounds_lower_limit", tolerance: 1e-4, check: bounds_lower_limit },
    Property { name: "bayes_soundness", tolerance: 1e-10, check: bayes_soundness },
    Property { name: "bayes_engine_exactness", tolerance: 0.0, check: bayes_engine_exactness },
    Property { name: "bayes_data_processing", tolerance: 1e-10, check: bayes_data_processing },
    Property { name: "bayes_small_ball_radius", tolerance: 1e-10, check: bayes_small_ball_radius },
];

/// Names of every registered property, in execution order.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.name).collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `index` of property number `property`.
pub fn instance_seed(seed: u64, property: usize, index: usize) -> u64 {
    splitmix64(splitmix64(seed ^ ((property as u64) << 40)) ^ index as u64)
}

/// Runs the properties whose names pass `filter`.
pub fn run_suite(config: &SuiteConfig, filter: impl Fn(&str) -> bool) -> Vec<PropertyReport> {
    let engine = Engine {
        mutant: config.mutant,
    };
    let instances = config.instances.max(1);
    PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| filter(p.name))
        .map(|(k, p)| {
            let mut violations = Vec::new();
            let mut max_violation: f64 = 0.0;
            for i in 0..instances {
                let seed = instance_seed(config.seed, k, i);
                let mut ctx = Ctx {
                    engine: &engine,
                    rng: ChaCha8Rng::seed_from_u64(seed),
                    dims: config.max_dims,
                };
                let d = (p.check)(&mut ctx);
                let d = if d.is_nan() { f64::INFINITY } else { d };
                max_violation = max_violation.max(d);
                if d > p.tolerance {
                    violations.push((seed, d));
                }
            }
            PropertyReport {
                property_name: p.name.to_string(),
                instances_tested: instances,
                tolerance: p.tolerance,
                violations,
                max_violation,
            }
        })
        .collect()
}

/// Every registered property on `n_instances` fresh instances each.
pub fn run_property_suite(seed: u64, n_instances: usize, max_dims: MaxDims) -> Vec<PropertyReport> {
    run_suite(
        &SuiteConfig {
            seed,
            instances: n_instances,
            max_dims,
            mutant: None,
        },
        |_| true,
    )
}
