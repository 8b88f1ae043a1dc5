//! Least-squares power-law fit on log-log axes.

use crate::CliError;

/// Fit of log(T) = exponent * log(N) + intercept over the given (N, T)
/// points (natural logs).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
}

impl ScalingFit {
    /// Ordinary least squares on (ln N, ln T). Needs at least 3 points with
    /// positive coordinates.
    pub fn from_points(points: Vec<(f64, f64)>) -> Result<Self, CliError> {
        if points.len() < 3 {
            return Err(CliError::Config(format!(
                "scaling fit needs at least 3 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|&(n, t)| n <= 0.0 || t <= 0.0) {
            return Err(CliError::Config(
                "scaling fit needs positive N and T on log-log axes".into(),
            ));
        }
        let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| (n.ln(), t.ln())).collect();
        let count = logs.len() as f64;
        let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
        let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
        let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
        let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
        if sxx == 0.0 {
            return Err(CliError::Config(
                "scaling fit needs at least two distinct N values".into(),
            ));
        }
        let exponent = sxy / sxx;
        let intercept = mean_y - exponent * mean_x;
        let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
        let ss_res: f64 = logs
            .iter()
            .map(|p| {
                let r = p.1 - (exponent * p.0 + intercept);
                r * r
            })
            .sum();
        let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
        Ok(Self {
            exponent,
            intercept,
            r_squared,
            points,
        })
    }
}
