//! Batch front end: load a scenario, run the selected suites, write a report.

pub mod config;
pub mod report;
pub mod suites;

use std::io::Write;

use clap::Parser;

pub use config::{ConfigError, Scenario, Suite};
pub use report::{Record, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "fedcalc", version, about = "Exact checks of the Fedosov calculus on a coordinate chart")]
pub struct Args {
    /// Scenario file (TOML).
    #[arg(long)]
    pub config: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    /// Emit one JSON document instead of JSON lines.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated suites: check, fedosov, moyal, linfty, all.
    #[arg(long, value_delimiter = ',')]
    pub suite: Option<Vec<String>>,
    #[arg(long)]
    pub ny: Option<u32>,
    #[arg(long)]
    pub nhbar: Option<usize>,
    /// Positional suite name (same values as --suite).
    pub command: Option<String>,
}

/// Applies command-line overrides to a loaded scenario.
pub fn scenario(args: &Args) -> Result<Scenario, ConfigError> {
    let mut sc = Scenario::load(&args.config)?;
    if let Some(s) = args.seed {
        sc.seed = s;
    }
    if let Some(n) = args.ny {
        sc.ny = n;
    }
    if let Some(n) = args.nhbar {
        sc.nhbar = n;
    }
    let mut names: Vec<&str> = Vec::new();
    if let Some(c) = &args.command {
        names.push(c);
    }
    if let Some(s) = &args.suite {
        names.extend(s.iter().map(String::as_str));
    }
    if !names.is_empty() {
        sc.suites = config::parse_suites(names)?;
    }
    sc.validate()?;
    Ok(sc)
}

/// Runs the front end and returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    let sc = match scenario(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = suites::run(&sc);
    let body = if args.json { report.to_json(&sc.name, sc.seed) } else { report.to_jsonl(&sc.name, sc.seed) };
    let written = match &args.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    eprint!("{}", report.human(&sc.name, sc.seed));
    if report.passed() {
        0
    } else {
        1
    }
}
