//! Cross-product sweeps, aggregates and log-log slope estimates.

use std::collections::BTreeMap;
use std::path::PathBuf;

use imprecise::Profile;
use serde::Serialize;

use crate::generate::{generate_instance, GeneratorKind, GeneratorSpec};
use crate::report::Format;
use crate::seed::trial_seeds;
use crate::trial::{run_trial, Algorithm, Policy, SelectRank, TrialParams, TrialReport};
use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub algorithms: Vec<Algorithm>,
    pub generators: Vec<GeneratorKind>,
    pub n: Vec<usize>,
    pub k: Vec<u32>,
    pub policies: Vec<Policy>,
    pub delta: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub profile: Profile,
    pub select_rank: SelectRank,
    pub timing: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            generators: vec![GeneratorKind::Uniform { lo: 0.0, hi: 100.0 }],
            n: vec![100, 400, 1600],
            k: vec![3],
            policies: vec![Policy::Random],
            delta: 1.0,
            trials: 5,
            master_seed: 0,
            profile: Profile::Practical,
            select_rank: SelectRank::Median,
            timing: false,
            format: Format::Csv,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(BenchError::Usage(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n == 0) {
            return Err(BenchError::Usage(format!(
                "instance size {n} must be at least 1"
            )));
        }
        if let Some(&k) = self.k.iter().find(|&&k| k < 2) {
            return Err(BenchError::Usage(format!("k = {k} must be at least 2")));
        }
        Ok(())
    }
}

/// Runs the sweep in configuration order: algorithm, generator, n, k,
/// policy, trial. `adversary_stress` ignores generators and policies and
/// runs once per (n, k, trial).
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>, BenchError> {
    cfg.validate()?;
    let mut reports = Vec::new();
    for &algorithm in &cfg.algorithms {
        let ks: Vec<u32> = if algorithm.takes_k() {
            cfg.k.clone()
        } else {
            vec![algorithm.fixed_k()]
        };
        let (generators, policies) = if algorithm == Algorithm::AdversaryStress {
            (
                &cfg.generators[..cfg.generators.len().min(1)],
                &[Policy::First][..],
            )
        } else {
            (&cfg.generators[..], &cfg.policies[..])
        };
        for (g, &kind) in generators.iter().enumerate() {
            for &n in &cfg.n {
                for &k in &ks {
                    let params = TrialParams {
                        k,
                        profile: cfg.profile,
                        select_rank: cfg.select_rank,
                        timing: cfg.timing,
                    };
                    for &policy in policies {
                        for t in 0..cfg.trials {
                            let seeds = trial_seeds(cfg.master_seed, g, n, t);
                            let instance = generate_instance(&GeneratorSpec {
                                kind,
                                n,
                                delta: cfg.delta,
                                seed: seeds.instance,
                            })?;
                            reports.push(run_trial(algorithm, &instance, &params, policy, seeds)?);
                        }
                    }
                }
            }
        }
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub algorithm: String,
    pub n: usize,
    pub k: u32,
    pub trials: usize,
    pub min_comparisons: u64,
    pub median_comparisons: f64,
    pub max_comparisons: u64,
    pub max_realized_error: f64,
    pub all_bound_ok: bool,
    pub all_error_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeRow {
    pub algorithm: String,
    pub k: u32,
    pub points: usize,
    /// Least-squares slope of log(median comparisons) against log n.
    pub slope: f64,
    pub lower_exponent: Option<f64>,
    pub upper_exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub aggregates: Vec<Aggregate>,
    pub slopes: Vec<SlopeRow>,
}

fn median(sorted: &[u64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m] as f64
    } else {
        (sorted[m - 1] as f64 + sorted[m] as f64) / 2.0
    }
}

pub fn aggregate(reports: &[TrialReport]) -> Vec<Aggregate> {
    // Keeps first-seen order of (algorithm, n, k).
    let mut order = Vec::new();
    let mut groups: BTreeMap<(String, usize, u32), Vec<&TrialReport>> = BTreeMap::new();
    for r in reports {
        let key = (r.algorithm.clone(), r.n, r.k);
        let entry = groups.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let mut counts: Vec<u64> = rows.iter().map(|r| r.comparisons).collect();
            counts.sort_unstable();
            Aggregate {
                algorithm: key.0,
                n: key.1,
                k: key.2,
                trials: rows.len(),
                min_comparisons: counts[0],
                median_comparisons: median(&counts),
                max_comparisons: *counts.last().unwrap(),
                max_realized_error: rows.iter().map(|r| r.realized_error).fold(0.0, f64::max),
                all_bound_ok: rows.iter().all(|r| r.bound_ok),
                all_error_ok: rows.iter().all(|r| r.error_ok),
            }
        })
        .collect()
}

/// Least-squares slope of `y` against `x`; `None` with fewer than two
/// distinct abscissae.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

pub fn slopes(aggregates: &[Aggregate]) -> Vec<SlopeRow> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<(String, u32), Vec<(f64, f64)>> = BTreeMap::new();
    for a in aggregates {
        if a.n < 2 || a.median_comparisons <= 0.0 {
            continue;
        }
        let key = (a.algorithm.clone(), a.k);
        let entry = groups.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(((a.n as f64).ln(), a.median_comparisons.ln()));
    }
    order
        .into_iter()
        .filter_map(|key| {
            let pts = &groups[&key];
            let slope = fit_slope(pts)?;
            let algo: Option<Algorithm> = key.0.parse().ok();
            Some(SlopeRow {
                points: pts.len(),
                slope,
                lower_exponent: algo.and_then(|a| a.lower_exponent(key.1.max(1))),
                upper_exponent: algo.and_then(|a| a.upper_exponent(key.1.max(1))),
                algorithm: key.0,
                k: key.1,
            })
        })
        .collect()
}

pub fn summarize(reports: &[TrialReport]) -> Summary {
    let aggregates = aggregate(reports);
    let slopes = slopes(&aggregates);
    Summary { aggregates, slopes }
}
