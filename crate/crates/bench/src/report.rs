//! CSV and JSON output of trial rows and summaries.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::suite::Summary;
use crate::trial::TrialReport;
use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s.trim() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(BenchError::Usage(format!("unknown format `{other}`"))),
        }
    }
}

fn write_csv<W: Write, T: serde::Serialize>(
    out: W,
    rows: &[T],
    header: &[&str],
) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    // Written by hand so an empty report still carries its header.
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const TRIAL_COLUMNS: [&str; 10] = [
    "algorithm",
    "n",
    "k",
    "seed",
    "comparisons",
    "bound",
    "bound_ok",
    "realized_error",
    "error_ok",
    "wall_time",
];

pub fn write_trials<W: Write>(
    mut out: W,
    reports: &[TrialReport],
    format: Format,
) -> Result<(), BenchError> {
    match format {
        Format::Csv => write_csv(out, reports, &TRIAL_COLUMNS),
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, reports)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

/// CSV summaries hold the aggregate table, a blank line, then the slope
/// table.
pub fn write_summary<W: Write>(
    mut out: W,
    summary: &Summary,
    format: Format,
) -> Result<(), BenchError> {
    match format {
        Format::Csv => {
            write_csv(
                &mut out,
                &summary.aggregates,
                &[
                    "algorithm",
                    "n",
                    "k",
                    "trials",
                    "min_comparisons",
                    "median_comparisons",
                    "max_comparisons",
                    "max_realized_error",
                    "all_bound_ok",
                    "all_error_ok",
                ],
            )?;
            writeln!(out)?;
            write_csv(
                &mut out,
                &summary.slopes,
                &[
                    "algorithm",
                    "k",
                    "points",
                    "slope",
                    "lower_exponent",
                    "upper_exponent",
                ],
            )
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, summary)?;
            writeln!(out)?;
            Ok(())
        }
    }
}
