//! Rényi divergence `D_α(P‖Q)` for every order in `[-∞, +∞]`.
//!
//! All logarithms are natural. Finite orders outside `{0, 1}` evaluate
//!
//! ```text
//! D_α(P‖Q) = 1/(α−1) · ln Σ_x p(x)^α q(x)^{1−α}
//! ```
//!
//! by a max-shifted log-sum-exp over `α·ln p + (1−α)·ln q`, so the sum never
//! overflows even for `|α|` in the hundreds. Zero entries follow the
//! conventions below; negative orders additionally depend on
//! [`ZeroConvention`].
//!
//! | order        | support rule                                                   |
//! |--------------|----------------------------------------------------------------|
//! | `α > 1`      | `+∞` unless `supp P ⊆ supp Q`                                  |
//! | `0 < α < 1`  | only the common support contributes                            |
//! | `α < 0`      | strict: `−∞` unless `supp Q ⊆ supp P`; restricted: common support |
//! | `α = 1`      | Kullback–Leibler, `+∞` unless `P ≪ Q`                          |
//! | `α = 0`      | `−ln Q(supp P)`                                                |
//! | `α = +∞`     | `ln max_{p>0} p/q`                                             |
//! | `α = −∞`     | `ln min_{q>0} p/q` (strict) or over the common support        |

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;
use crate::order::{AlphaOrder, ExtReal, Regime, ZeroConvention};
use crate::prob::Pmf;

/// Rényi divergence of `p` from `q` in nats.
pub fn renyi_divergence(p: &Pmf, q: &Pmf, alpha: f64, conv: ZeroConvention) -> Result<ExtReal> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let alpha = AlphaOrder::new(alpha)?;
    Ok(divergence(p.probs(), q.probs(), alpha, conv))
}

/// Same as [`renyi_divergence`] on raw slices that are already known to be
/// probability vectors of equal length.
pub(crate) fn divergence(p: &[f64], q: &[f64], alpha: AlphaOrder, conv: ZeroConvention) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let pairs = || p.iter().copied().zip(q.iter().copied());
    let strict = conv == ZeroConvention::Strict;
    match alpha.regime() {
        Regime::One => {
            let mut acc = 0.0;
            for (pi, qi) in pairs() {
                if pi > 0.0 {
                    if qi == 0.0 {
                        return f64::INFINITY;
                    }
                    acc += pi * (pi.ln() - qi.ln());
                }
            }
            acc
        }
        Regime::Zero => {
            let mass: f64 = pairs().filter(|&(pi, _)| pi > 0.0).map(|(_, qi)| qi).sum();
            if mass <= 0.0 {
                f64::INFINITY
            } else {
                -mass.ln()
            }
        }
        Regime::PosInfinity => {
            let mut best = f64::NEG_INFINITY;
            for (pi, qi) in pairs() {
                if pi > 0.0 {
                    if qi == 0.0 {
                        return f64::INFINITY;
                    }
                    best = best.max(pi.ln() - qi.ln());
                }
            }
            best
        }
        Regime::NegInfinity => {
            let mut best = f64::INFINITY;
            for (pi, qi) in pairs() {
                if qi > 0.0 {
                    if pi == 0.0 {
                        if strict {
                            return f64::NEG_INFINITY;
                        }
                        continue;
                    }
                    best = best.min(pi.ln() - qi.ln());
                }
            }
            best
        }
        Regime::Above1 | Regime::Below1 | Regime::Negative => {
            let a = alpha.value();
            if a > 1.0 && pairs().any(|(pi, qi)| pi > 0.0 && qi == 0.0) {
                return f64::INFINITY;
            }
            if a < 0.0 && strict && pairs().any(|(pi, qi)| pi == 0.0 && qi > 0.0) {
                return f64::NEG_INFINITY;
            }
            let lse = log_sum_exp(
                pairs()
                    .filter(|&(pi, qi)| pi > 0.0 && qi > 0.0)
                    .map(|(pi, qi)| a * pi.ln() + (1.0 - a) * qi.ln()),
            );
            // an empty sum gives ln 0 = -∞, and (-∞)/(α-1) = +∞ for α < 1
            lse / (a - 1.0)
        }
    }
}

/// The binary divergence `d_α(p‖q) = D_α((p, 1−p) ‖ (q, 1−q))` under the
/// strict zero convention.
pub fn binary_renyi_divergence(p: f64, q: f64, alpha: f64) -> Result<ExtReal> {
    for v in [p, q] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "binary probability {v} is outside [0, 1]"
            )));
        }
    }
    let p = Pmf::new(vec![p, 1.0 - p])?;
    let q = Pmf::new(vec![q, 1.0 - q])?;
    renyi_divergence(&p, &q, alpha, ZeroConvention::Strict)
}

/// Both sides of the skew-symmetry identity
/// `D_α(p‖q) = α/(1−α) · D_{1−α}(q‖p)` for measures with equal supports.
pub fn skew_symmetry_check(p: &Pmf, q: &Pmf, alpha: f64) -> Result<(ExtReal, ExtReal)> {
    if !alpha.is_finite() || alpha == 0.0 || alpha == 1.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            expected: "finite, not 0 or 1",
        });
    }
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    if p.support() != q.support() {
        return Err(Error::SupportsNotEquivalent);
    }
    let lhs = renyi_divergence(p, q, alpha, ZeroConvention::Strict)?;
    let rhs = alpha / (1.0 - alpha) * renyi_divergence(q, p, 1.0 - alpha, ZeroConvention::Strict)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NU: [f64; 2] = [0.13, 0.87];
    const MU1: [f64; 2] = [0.32, 0.68];
    const MU2: [f64; 2] = [0.5, 0.5];

    fn pmf(v: &[f64]) -> Pmf {
        Pmf::new(v.to_vec()).unwrap()
    }

    fn d(p: &[f64], q: &[f64], a: f64) -> f64 {
        renyi_divergence(&pmf(p), &pmf(q), a, ZeroConvention::Strict).unwrap()
    }

    /// Direct evaluation with plain powers, no log-domain shifting.
    fn naive(p: &[f64], q: &[f64], a: f64) -> f64 {
        let s: f64 = p
            .iter()
            .zip(q)
            .map(|(&pi, &qi)| pi.powf(a) * qi.powf(1.0 - a))
            .sum();
        s.ln() / (a - 1.0)
    }

    fn positive_pmf(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.01f64..1.0, n).prop_map(|v| {
            let s: f64 = v.iter().sum();
            v.into_iter().map(|x| x / s).collect()
        })
    }

    #[test]
    fn counterexample_values() {
        assert!((d(&NU, &MU1, -2.0) - (-0.2855)).abs() < 5e-4);
        assert!((d(&NU, &MU2, -2.0) - (-0.6744)).abs() < 5e-4);
        let mix = Pmf::mix(0.4, &pmf(&MU1), &pmf(&MU2)).unwrap();
        let dm = renyi_divergence(&pmf(&NU), &mix, -2.0, ZeroConvention::Strict).unwrap();
        assert!((dm - (-0.5287)).abs() < 5e-4);
        let chord = 0.4 * d(&NU, &MU1, -2.0) + 0.6 * d(&NU, &MU2, -2.0);
        assert!((chord - (-0.5188)).abs() < 5e-4);
        assert!(dm < chord);
    }

    #[test]
    fn identical_measures_give_zero() {
        for a in [-2.0, -0.5, 0.0, 0.5, 1.0, 3.0, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(d(&MU1, &MU1, a).abs() < 1e-15, "alpha {a}");
        }
    }

    #[test]
    fn binary_divergence() {
        for a in [-3.0, -0.5, 0.5, 2.0] {
            assert!(binary_renyi_divergence(0.5, 0.5, a).unwrap().abs() < 1e-15);
        }
        let v = binary_renyi_divergence(0.13, 0.32, -2.0).unwrap();
        assert!((v - (-0.2855)).abs() < 5e-4);
        let general = d(&[0.1, 0.9], &[0.5, 0.5], -3.0);
        assert_eq!(binary_renyi_divergence(0.1, 0.5, -3.0).unwrap(), general);
        assert!(binary_renyi_divergence(1.5, 0.5, -1.0).is_err());
    }

    #[test]
    fn support_conventions() {
        let p = [0.0, 0.4, 0.6];
        let q = [0.2, 0.3, 0.5];
        // q has mass where p does not
        assert_eq!(d(&p, &q, -2.0), f64::NEG_INFINITY);
        assert_eq!(d(&p, &q, f64::NEG_INFINITY), f64::NEG_INFINITY);
        let restricted = renyi_divergence(&pmf(&p), &pmf(&q), -2.0, ZeroConvention::SupportRestricted).unwrap();
        assert!((restricted - naive(&[0.4, 0.6], &[0.3, 0.5], -2.0)).abs() < 1e-14);
        // p has mass where q does not
        assert_eq!(d(&q, &p, 2.0), f64::INFINITY);
        assert_eq!(d(&q, &p, 1.0), f64::INFINITY);
        assert_eq!(d(&q, &p, f64::INFINITY), f64::INFINITY);
        let half = d(&q, &p, 0.5);
        assert!((half - naive(&[0.3, 0.5], &[0.4, 0.6], 0.5)).abs() < 1e-14);
        // for α<0, p>0 where q=0 simply drops
        let v = d(&q, &p, -2.0);
        assert!((v - naive(&[0.3, 0.5], &[0.4, 0.6], -2.0)).abs() < 1e-14);
        // disjoint supports
        assert_eq!(d(&[1.0, 0.0], &[0.0, 1.0], 0.5), f64::INFINITY);
        assert_eq!(d(&[1.0, 0.0], &[0.0, 1.0], 0.0), f64::INFINITY);
        assert!((d(&[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5], 0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            renyi_divergence(&pmf(&MU1), &pmf(&[0.2, 0.3, 0.5]), 2.0, ZeroConvention::Strict),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            renyi_divergence(&pmf(&MU1), &pmf(&MU2), f64::NAN, ZeroConvention::Strict),
            Err(Error::InvalidAlpha)
        );
    }

    #[test]
    fn large_orders_do_not_overflow() {
        let p = [1e-3, 1.0 - 1e-3];
        let q = [0.9, 0.1];
        let v = d(&p, &q, -300.0);
        assert!(v.is_finite());
        let lo = d(&p, &q, f64::NEG_INFINITY);
        assert!(v >= lo - 1e-12 && v <= d(&p, &q, -299.0) + 1e-12);
        assert!(d(&p, &q, 300.0).is_finite());
    }

    #[test]
    fn skew_symmetry_examples() {
        let (l, r) = skew_symmetry_check(&pmf(&MU1), &pmf(&MU1), -2.0).unwrap();
        assert!(l.abs() < 1e-15 && r.abs() < 1e-15);
        let (l, r) = skew_symmetry_check(&pmf(&NU), &pmf(&MU1), -2.0).unwrap();
        assert!((l - (-0.2855)).abs() < 5e-4);
        assert!((l - r).abs() < 1e-12);
        assert_eq!(
            skew_symmetry_check(&pmf(&[0.0, 1.0]), &pmf(&MU1), -2.0),
            Err(Error::SupportsNotEquivalent)
        );
        assert!(skew_symmetry_check(&pmf(&NU), &pmf(&MU1), 1.0).is_err());
    }

    proptest! {
        #[test]
        fn matches_naive_summation(p in positive_pmf(4), q in positive_pmf(4), a in -6.0f64..6.0) {
            prop_assume!(a.abs() > 1e-3 && (a - 1.0).abs() > 1e-3);
            let fast = d(&p, &q, a);
            let slow = naive(&p, &q, a);
            prop_assert!((fast - slow).abs() <= 1e-10 * (1.0 + slow.abs()));
        }

        #[test]
        fn never_nan(p in positive_pmf(3), q in positive_pmf(3), a in -50.0f64..50.0, zero in 0usize..4) {
            let mut p = p;
            if zero < 3 {
                let m = p[zero];
                p[zero] = 0.0;
                p[(zero + 1) % 3] += m;
            }
            for conv in [ZeroConvention::Strict, ZeroConvention::SupportRestricted] {
                let v = renyi_divergence(&pmf(&p), &pmf(&q), a, conv).unwrap();
                prop_assert!(!v.is_nan());
                let v = renyi_divergence(&pmf(&q), &pmf(&p), a, conv).unwrap();
                prop_assert!(!v.is_nan());
            }
        }

        #[test]
        fn skew_symmetry_holds(p in positive_pmf(3), q in positive_pmf(3), a in prop::sample::select(vec![-5.0, -0.5, 0.3, 2.0])) {
            let (l, r) = skew_symmetry_check(&pmf(&p), &pmf(&q), a).unwrap();
            prop_assert!((l - r).abs() < 1e-10);
        }
    }
}
