//! Binomial proportion statistics for the Monte Carlo estimators.

/// Two-sided 95% standard normal quantile.
const Z95: f64 = 1.959963984540054;

/// Wilson score interval at 95% for `successes` out of `samples`.
///
/// The interval always contains the point estimate, stays inside `[0, 1]`,
/// and behaves sensibly near the endpoints, where several of our categories
/// live.
pub fn wilson_interval(successes: u64, samples: u64) -> (f64, f64) {
    if samples == 0 {
        return (0.0, 1.0);
    }
    let n = samples as f64;
    let p_hat = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = p_hat + z2 / (2.0 * n);
    let radius = Z95 * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    // At the endpoints the algebra gives the point estimate back exactly;
    // fold float residue into the estimate so the interval always brackets it.
    let low = ((center - radius) / denom).clamp(0.0, 1.0).min(p_hat);
    let high = ((center + radius) / denom).clamp(0.0, 1.0).max(p_hat);
    (low, high)
}
