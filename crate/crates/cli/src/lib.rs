//! File formats, configuration and verification suites around
//! `ambientforge-core`.

pub mod config;
pub mod formats;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use config::{resolve_path, ConfigFile, Inputs};
use report::Report;
use serde::Deserialize;
use suites::{run_suite, Suite};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{context}: {source}")]
    Core { context: String, source: ambientforge_core::Error },
    #[error("{origin}: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Command-line values; each overrides the config file.
#[derive(Clone, Debug, Default)]
pub struct VerifyArgs {
    pub suite: Option<Suite>,
    pub order: Option<usize>,
    pub depth: Option<usize>,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A finished run and where its rendering goes.
#[derive(Clone, Debug)]
pub struct Run {
    pub report: Report,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Run {
    pub fn rendered(&self) -> String {
        render(&self.report, self.format)
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Run, CliError> {
    let (cfg, base) = match &args.config {
        Some(p) => ConfigFile::load(p)?,
        None => (ConfigFile::default(), Path::new(".").to_path_buf()),
    };
    let cfg = ConfigFile {
        order: args.order.or(cfg.order),
        depth: args.depth.or(cfg.depth),
        ..cfg
    };
    let suite = args
        .suite
        .or(cfg.suite)
        .ok_or_else(|| CliError::Invalid("no suite given on the command line or in the config".to_string()))?;
    let out = args.out.clone().or_else(|| cfg.out.as_deref().map(|p| resolve_path(p, &base)));
    let format = args.format.or(cfg.format).unwrap_or_default();
    let inputs = Inputs::resolve(&cfg, &base)?;
    Ok(Run { report: run_suite(suite, &inputs)?, format, out })
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

/// Runs `verify`, writes the report and maps the outcome to an exit code.
pub fn run(args: &VerifyArgs) -> i32 {
    let result = verify(args).and_then(|run| {
        let text = run.rendered();
        match &run.out {
            Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source })?,
            None => print!("{text}"),
        }
        Ok(run.report.pass)
    });
    match result {
        Ok(true) => exit::PASS,
        Ok(false) => exit::FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            exit::INPUT_ERROR
        }
    }
}
