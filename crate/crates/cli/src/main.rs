use clap::Parser;

use ctsearch_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = ctsearch_cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
