//! Log-domain accumulation helpers.

/// `ln Σ exp(t)` with a max shift. Empty input, or all terms `-∞`, gives `-∞`;
/// any `+∞` term gives `+∞`.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + terms.iter().map(|&t| (t - max).exp()).sum::<f64>().ln()
}

/// Weighted power mean `(Σ w v^p)^{1/p}` over the points with `w > 0`.
///
/// Values must be finite and non-negative. A zero value under a negative
/// exponent forces the mean to zero; `p = ±∞` gives the max/min.
pub fn power_mean(weights: &[f64], values: &[f64], p: f64) -> f64 {
    debug_assert_eq!(weights.len(), values.len());
    debug_assert!(p != 0.0 && !p.is_nan());
    let support = || {
        weights
            .iter()
            .zip(values)
            .filter(|(&w, _)| w > 0.0)
            .map(|(_, &v)| v)
    };
    if p == f64::INFINITY {
        return support().fold(0.0, f64::max);
    }
    if p == f64::NEG_INFINITY {
        return support().fold(f64::INFINITY, f64::min);
    }
    if p < 0.0 && support().any(|v| v == 0.0) {
        return 0.0;
    }
    let lse = log_sum_exp(
        weights
            .iter()
            .zip(values)
            .filter(|(&w, &v)| w > 0.0 && v > 0.0)
            .map(|(&w, &v)| w.ln() + p * v.ln()),
    );
    if lse == f64::NEG_INFINITY {
        return 0.0;
    }
    (lse / p).exp()
}
