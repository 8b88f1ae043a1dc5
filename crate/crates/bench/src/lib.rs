//! Shared fixtures for the benchmark targets.

use ctsearch::SearchParams;

/// Restricted instance with E = 1 at the given mistuning and dimension.
pub fn restricted(epsilon: f64, dim: usize) -> SearchParams {
    SearchParams::new(1.0, epsilon, dim, None).expect("valid benchmark instance")
}

/// Uniform sample times covering `periods` probability oscillations.
pub fn sample_times(params: &SearchParams, periods: f64, count: usize) -> Vec<f64> {
    let omega = ctsearch::closed_form::angular_frequency(params);
    let t_end = periods * std::f64::consts::PI / omega;
    (0..=count).map(|i| t_end * i as f64 / count as f64).collect()
}
