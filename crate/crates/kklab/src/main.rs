use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kklab::{parse_config_text, run_suite, ExperimentConfig, KklabError, Report, Suite, MAX_FIELD_ENV};

/// Runs one verification suite and writes a JSON report.
#[derive(Parser, Debug)]
#[command(name = "kklab", version)]
struct Cli {
    /// Suite name, e.g. `cw-scan` or `reciprocity`.
    suite: String,
    /// Flat `key = value` config file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed in the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Report, KklabError> {
    let suite: Suite = cli.suite.parse()?;
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|source| KklabError::Io { path: cli.config.display().to_string(), source })?;
    let env_cap = std::env::var(MAX_FIELD_ENV).ok();
    let config = ExperimentConfig::resolve(suite, parse_config_text(&text)?, cli.seed, cli.out, env_cap.as_deref())?;
    let report = run_suite(&config)?;
    let json = report.to_json();
    match &config.out {
        Some(path) => {
            std::fs::write(path, json).map_err(|source| KklabError::Io { path: path.display().to_string(), source })?
        }
        None => print!("{json}"),
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            for failure in report.failures() {
                eprintln!("FAIL {}", failure.property);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("kklab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
