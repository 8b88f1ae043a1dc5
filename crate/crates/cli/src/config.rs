//! Flag parsing and per-command config validation.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Success probability over time: closed form vs exact two-level oracle.
    Series,
    /// One row per mistuning ratio: frequency, peak, expected total time.
    SweepEpsilon,
    /// Log-log fit of expected total time vs N, one fit per mistuning.
    Scaling,
    /// Haar overlap histogram against the exact and asymptotic laws.
    Distribution,
    /// Run the full invariant suite and gate on every tolerance.
    Validate,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Series => "series",
            CommandKind::SweepEpsilon => "sweep-epsilon",
            CommandKind::Scaling => "scaling",
            CommandKind::Distribution => "distribution",
            CommandKind::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Raw command line.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "ctsearch",
    version,
    about = "Continuous-time quantum search with a mistuned driving Hamiltonian"
)]
pub struct Cli {
    /// What to run.
    #[arg(long, value_enum)]
    pub command: CommandKind,

    /// Oracle energy E.
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,

    /// Single mistuning ratio E'/E (series).
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,

    /// Comma-separated mistuning grid (sweep-epsilon, scaling, validate).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub epsilon_grid: Option<Vec<f64>>,

    /// Hilbert-space dimension N.
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated dimension grid (scaling).
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,

    /// Largest sampled time (series); defaults to one oscillation period.
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Sample spacing (series) or integrator step (validate).
    #[arg(long)]
    pub dt: Option<f64>,

    /// Number of Haar samples (distribution).
    #[arg(long)]
    pub samples: Option<usize>,

    /// RNG seed; falls back to CTSEARCH_SEED, then 42.
    #[arg(long, env = "CTSEARCH_SEED")]
    pub seed: Option<u64>,

    /// Write the table here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Table format.
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,

    /// Admit negative mistuning ratios at construction. The closed-form
    /// angle machinery still requires epsilon >= 0, so commands built on it
    /// will refuse negative grid values with a clear error.
    #[arg(long)]
    pub allow_negative_epsilon: bool,
}

/// Fully resolved configuration, echoed verbatim into every report.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub command: CommandKind,
    pub energy: f64,
    pub epsilon: Option<f64>,
    pub epsilon_grid: Option<Vec<f64>>,
    pub n: usize,
    pub n_grid: Option<Vec<usize>>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub output: Option<String>,
    pub format: OutputFormat,
    pub allow_negative_epsilon: bool,
}

fn ensure_strictly_increasing(grid: &[f64], what: &str) -> Result<(), CliError> {
    if grid.is_empty() {
        return Err(CliError::Config(format!("{what} must not be empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!("{what} contains a non-finite value")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

fn ensure_epsilon_sign(grid: &[f64], allow_negative: bool) -> Result<(), CliError> {
    if let Some(bad) = grid.iter().find(|&&e| e < 0.0) {
        if !allow_negative {
            return Err(CliError::Config(format!(
                "epsilon {bad} is negative; pass --allow-negative-epsilon to admit it"
            )));
        }
    }
    Ok(())
}

impl Cli {
    /// Apply per-command defaults and validate the combination.
    pub fn resolve(self) -> Result<Resolved, CliError> {
        let seed = self.seed.unwrap_or(DEFAULT_SEED);
        if !self.energy.is_finite() || self.energy <= 0.0 {
            return Err(CliError::Config(format!(
                "--energy must be positive and finite, got {}",
                self.energy
            )));
        }
        if let Some(dt) = self.dt {
            if !dt.is_finite() || dt <= 0.0 {
                return Err(CliError::Config(format!(
                    "--dt must be positive and finite, got {dt}"
                )));
            }
        }
        if let Some(t_max) = self.t_max {
            if !t_max.is_finite() || t_max <= 0.0 {
                return Err(CliError::Config(format!(
                    "--t-max must be positive and finite, got {t_max}"
                )));
            }
        }

        let (epsilon, epsilon_grid, n, n_grid, samples) = match self.command {
            CommandKind::Series => {
                let eps = self.epsilon.unwrap_or(1.0);
                if eps < 0.0 && !self.allow_negative_epsilon {
                    return Err(CliError::Config(format!(
                        "epsilon {eps} is negative; pass --allow-negative-epsilon to admit it"
                    )));
                }
                (Some(eps), None, self.n.unwrap_or(100), None, 0)
            }
            CommandKind::SweepEpsilon => {
                let grid = self
                    .epsilon_grid
                    .clone()
                    .ok_or_else(|| CliError::Config("sweep-epsilon requires --epsilon-grid".into()))?;
                ensure_strictly_increasing(&grid, "--epsilon-grid")?;
                ensure_epsilon_sign(&grid, self.allow_negative_epsilon)?;
                (None, Some(grid), self.n.unwrap_or(100), None, 0)
            }
            CommandKind::Scaling => {
                let grid = self
                    .epsilon_grid
                    .clone()
                    .unwrap_or_else(|| vec![0.5, 1.0, 2.0, 10.0]);
                ensure_strictly_increasing(&grid, "--epsilon-grid")?;
                if grid.iter().any(|&e| e <= 0.0) {
                    return Err(CliError::Config(
                        "scaling needs epsilon > 0: the undriven case has no finite trial time"
                            .into(),
                    ));
                }
                let n_grid = self
                    .n_grid
                    .clone()
                    .unwrap_or_else(|| vec![100, 1_000, 10_000, 100_000, 1_000_000]);
                if n_grid.len() < 3 {
                    return Err(CliError::Config(format!(
                        "--n-grid needs at least 3 points for a fit, got {}",
                        n_grid.len()
                    )));
                }
                if n_grid.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(CliError::Config("--n-grid must be strictly increasing".into()));
                }
                if n_grid.iter().any(|&n| n < 2) {
                    return Err(CliError::Config("--n-grid entries must be at least 2".into()));
                }
                (None, Some(grid), self.n.unwrap_or(100), Some(n_grid), 0)
            }
            CommandKind::Distribution => {
                let samples = self.samples.unwrap_or(100_000);
                if samples < 1_000 {
                    return Err(CliError::Config(format!(
                        "--samples must be at least 1000, got {samples}"
                    )));
                }
                let n = self.n.unwrap_or(100);
                if n < 2 {
                    return Err(CliError::Config(format!("--n must be at least 2, got {n}")));
                }
                (None, None, n, None, samples)
            }
            CommandKind::Validate => {
                let n = self.n.unwrap_or(16);
                if !(2..=64).contains(&n) {
                    return Err(CliError::Config(format!(
                        "validate runs the dense integrator and needs 2 <= N <= 64, got {n}"
                    )));
                }
                let grid = self
                    .epsilon_grid
                    .clone()
                    .unwrap_or_else(|| vec![0.0, 0.5, 1.0, 2.0, 10.0]);
                ensure_strictly_increasing(&grid, "--epsilon-grid")?;
                if grid.iter().any(|&e| e < 0.0) {
                    return Err(CliError::Config(
                        "validate cross-checks the closed form and needs epsilon >= 0".into(),
                    ));
                }
                // The one dt serves every grid point, so it must respect the
                // step guard at the largest driving energy.
                let eps_max = grid.last().copied().unwrap_or(1.0);
                let guard_dt = ctsearch::STEP_GUARD / (self.energy * (1.0 + eps_max));
                if let Some(dt) = self.dt {
                    if dt > guard_dt * (1.0 + 1e-9) {
                        return Err(CliError::Config(format!(
                            "--dt {dt} violates the step guard dt*(E+E') <= {}; need dt <= {guard_dt:.6}",
                            ctsearch::STEP_GUARD
                        )));
                    }
                }
                (None, Some(grid), n, None, 0)
            }
        };

        Ok(Resolved {
            command: self.command,
            energy: self.energy,
            epsilon,
            epsilon_grid,
            n,
            n_grid,
            t_max: self.t_max,
            dt: self.dt,
            samples,
            seed,
            output: self.output.map(|p| p.display().to_string()),
            format: self.format,
            allow_negative_epsilon: self.allow_negative_epsilon,
        })
    }
}
