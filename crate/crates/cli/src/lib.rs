//! Library behind the `ctsearch` binary: flag parsing, the five command
//! runners and the CSV/JSON writers, exposed so integration tests can drive
//! them directly.

pub mod commands;
pub mod config;
pub mod fit;
pub mod output;

use config::{Cli, CommandKind, OutputFormat, Resolved};
use output::CommandOutput;

/// CLI failure modes, mapped to process exit codes in `main`.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad grids, unusable instances, I/O trouble: exit 2.
    Config(String),
    /// The validate gate ran and at least one tolerance failed: exit 1.
    ChecksFailed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::ChecksFailed(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ctsearch::Error> for CliError {
    fn from(e: ctsearch::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::ChecksFailed(_) => 1,
        }
    }
}

/// Run a resolved command and hand back its output without writing anything.
pub fn execute(config: &Resolved) -> Result<CommandOutput, CliError> {
    match config.command {
        CommandKind::Series => commands::series::run(config),
        CommandKind::SweepEpsilon => commands::sweep_epsilon::run(config),
        CommandKind::Scaling => commands::scaling::run(config),
        CommandKind::Distribution => commands::distribution::run(config),
        CommandKind::Validate => commands::validate::run(config),
    }
}

/// Resolve, run, write, and translate failed gates into exit codes.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.resolve()?;
    let out = execute(&config)?;

    // validate is a machine-readable gate: always a JSON report
    let rendered = match (config.command, config.format) {
        (CommandKind::Validate, _) => out.to_json(),
        (_, OutputFormat::Json) => out.to_json(),
        (_, OutputFormat::Csv) => out.to_csv(),
    };
    output::write_rendered(&config, &rendered)?;

    // a CSV distribution table still reports its KS summary block on stdout
    if config.command == CommandKind::Distribution
        && config.format == OutputFormat::Csv
        && config.output.is_some()
    {
        println!("{}", out.checks_json());
    }

    if config.command == CommandKind::Validate {
        let failed: Vec<&str> = out
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        if !failed.is_empty() {
            return Err(CliError::ChecksFailed(format!(
                "{} of {} checks failed: {}",
                failed.len(),
                out.checks.len(),
                failed.join(", ")
            )));
        }
    }
    Ok(())
}
