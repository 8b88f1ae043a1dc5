pub mod distribution;
pub mod scaling;
pub mod series;
pub mod sweep_epsilon;
pub mod validate;

use ctsearch::SearchParams;

use crate::config::Resolved;
use crate::CliError;

/// Instance at a given mistuning, honoring the sign override.
pub(crate) fn instance(config: &Resolved, epsilon: f64) -> Result<SearchParams, CliError> {
    let driving = epsilon * config.energy;
    let params = if config.allow_negative_epsilon {
        SearchParams::new_signed(config.energy, driving, config.n, None)
    } else {
        SearchParams::new(config.energy, driving, config.n, None)
    };
    params.map_err(CliError::from)
}
