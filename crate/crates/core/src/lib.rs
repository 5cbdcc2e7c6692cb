//! Rényi divergences and Sibson's α-mutual information for every order in
//! `[-∞, +∞]`, including negative orders, together with the reverse-Hölder
//! bound family they induce and lower bounds on Bayesian risk.
//!
//! Every quantity is in nats. Negative orders are sensitive to where the
//! distributions vanish, so each measure takes a [`ZeroConvention`]:
//! [`ZeroConvention::Strict`] reads `0^α` as `+∞` and is the default.
//!
//! ```
//! use sibson::{joint_from_channel, sibson_mi, Channel, Pmf, ZeroConvention};
//!
//! let joint = joint_from_channel(&Pmf::uniform(2)?, &Channel::bsc(0.1)?)?;
//! let mi = sibson_mi(&joint, -2.0, ZeroConvention::Strict)?;
//! assert!(mi.value > 0.0);
//! # Ok::<(), sibson::Error>(())
//! ```
//!
//! Modules:
//! - [`prob`]: distributions, joints, channels
//! - [`renyi`][]: `D_α(P‖Q)`
//! - [`sibson`]: `I_α(X, Y)`, the optimal output measure, maximal (cost) leakage
//! - [`closed_forms`]: binary symmetric, erasure and Gaussian calculators
//! - [`bounds`]: reverse-Hölder bounds and the per-regime table
//! - [`bayes`]: exact Bayes risk, small-ball probability and risk lower bounds
//! - [`verify`]: simplex grid search and the randomized property suite
//! - [`cli`]: the command-line front end

#![forbid(unsafe_code)]

pub mod bayes;
pub mod bounds;
pub mod cli;
pub mod closed_forms;
pub mod error;
mod numeric;
pub mod order;
pub mod prob;
pub mod renyi;
pub mod sibson;
pub mod verify;

pub use error::{Error, Result};
pub use order::{AlphaOrder, ExtReal, Regime, ZeroConvention};
pub use prob::{
    conditional, joint_from_channel, marginals, push_forward, validate_pmf, Channel, Direction,
    JointPmf, Pmf, Support,
};
pub use renyi::{binary_renyi_divergence, renyi_divergence, skew_symmetry_check};
pub use sibson::{
    maximal_cost_leakage, maximal_leakage, optimal_q_y, sibson_exp_transform, sibson_mi,
    SibsonResult,
};
