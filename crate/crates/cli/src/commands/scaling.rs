//! Expected-total-time scaling in N, one log-log fit per mistuning ratio.
//!
//! Uses the closed form only, so dimensions up to 10^6 and beyond cost
//! nothing; the dense integrator never runs here.

use ctsearch::{closed_form, SearchParams};

use crate::config::Resolved;
use crate::fit::ScalingFit;
use crate::output::{Cell, CommandOutput};
use crate::CliError;

pub fn run(config: &Resolved) -> Result<CommandOutput, CliError> {
    let eps_grid = config
        .epsilon_grid
        .as_deref()
        .expect("scaling config carries an epsilon grid");
    let n_grid = config
        .n_grid
        .as_deref()
        .expect("scaling config carries an n grid");

    let mut rows = Vec::with_capacity(eps_grid.len());
    for &epsilon in eps_grid {
        let mut points = Vec::with_capacity(n_grid.len());
        for &n in n_grid {
            let params = SearchParams::new(config.energy, epsilon * config.energy, n, None)?;
            let report = closed_form::peak(&params)?;
            let total = report.expected_total_time().ok_or_else(|| {
                CliError::Config(format!(
                    "epsilon {epsilon} has no finite per-trial time to fit"
                ))
            })?;
            points.push((n as f64, total));
        }
        let fit = ScalingFit::from_points(points)?;
        rows.push(vec![
            Cell::Float(epsilon),
            Cell::Float(fit.exponent),
            Cell::Float(fit.intercept),
            Cell::Float(fit.r_squared),
            Cell::Int(fit.points.len() as u64),
        ]);
    }

    Ok(CommandOutput {
        config: config.clone(),
        columns: vec!["epsilon", "exponent", "intercept", "r_squared", "n_points"],
        rows,
        checks: vec![],
    })
}
