//! Experiment harness for the imprecise-comparison algorithms: instance
//! generators, a trial runner that counts, verifies and checks bounds, and
//! CSV/JSON reporting.

pub mod config;
pub mod generate;
pub mod report;
pub mod seed;
pub mod suite;
pub mod trial;

use std::io::Write;
use std::path::{Path, PathBuf};

pub use generate::{generate_instance, Direction, GeneratorKind, GeneratorSpec};
pub use report::Format;
pub use suite::{run_suite, summarize, SuiteConfig, Summary};
pub use trial::{
    bubble_sort_baseline, run_trial, Algorithm, Policy, SelectRank, TrialParams, TrialReport,
};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("algorithm failed: {0}")]
    Algorithm(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// 2 for usage and configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Config(_) => 2,
            _ => 1,
        }
    }
}

/// `<out>.summary.<ext>` next to the trial file.
pub fn summary_path(out: &Path, format: Format) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(format!(".summary.{}", format.extension()));
    PathBuf::from(name)
}

/// Runs the sweep, writes trials to `--out` or `stdout` and the summary
/// next to it or to `stderr`. Returns the trial rows.
pub fn execute(
    cfg: &SuiteConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<Vec<TrialReport>, BenchError> {
    let reports = run_suite(cfg)?;
    let summary = summarize(&reports);
    match &cfg.out {
        Some(path) => {
            report::write_trials(std::fs::File::create(path)?, &reports, cfg.format)?;
            let sp = summary_path(path, cfg.format);
            report::write_summary(std::fs::File::create(sp)?, &summary, cfg.format)?;
        }
        None => {
            report::write_trials(&mut *stdout, &reports, cfg.format)?;
            report::write_summary(&mut *stderr, &summary, cfg.format)?;
        }
    }
    for r in &reports {
        if let Some(v) = &r.violation {
            writeln!(stderr, "FAIL seed={}: {v}", r.seed)?;
        }
    }
    Ok(reports)
}
