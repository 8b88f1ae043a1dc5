//! Probability time series: closed form against the exact two-level oracle.

use ctsearch::{closed_form, oracle};

use crate::commands::instance;
use crate::config::Resolved;
use crate::output::{Cell, CommandOutput};
use crate::CliError;

const DEFAULT_POINTS: usize = 1000;

pub fn run(config: &Resolved) -> Result<CommandOutput, CliError> {
    let epsilon = config.epsilon.expect("series config carries an epsilon");
    let params = instance(config, epsilon)?;
    let dq = closed_form::derived_quantities(&params)?;

    // default horizon: one full amplitude period
    let t_max = match config.t_max {
        Some(t) => t,
        None => 2.0 * std::f64::consts::PI / dq.omega(),
    };
    let steps = match config.dt {
        Some(dt) => ((t_max / dt) - 1e-9).ceil().max(1.0) as usize,
        None => DEFAULT_POINTS,
    };
    let times: Vec<f64> = (0..=steps)
        .map(|i| t_max * i as f64 / steps as f64)
        .collect();

    let traj = oracle::propagate_effective_2d(&params, &times)?;

    let mut rows = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        let p_closed = closed_form::probability_with(&params, &dq, t);
        let p_oracle = traj.amplitudes()[i].norm_sqr();
        rows.push(vec![
            Cell::Float(t),
            Cell::Float(p_closed),
            Cell::Float(p_oracle),
            Cell::Float((p_closed - p_oracle).abs()),
        ]);
    }

    Ok(CommandOutput {
        config: config.clone(),
        columns: vec!["t", "p_closed", "p_oracle", "abs_err"],
        rows,
        checks: vec![],
    })
}
