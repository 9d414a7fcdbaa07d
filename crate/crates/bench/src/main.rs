use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use imprecise_bench::config::{load_config, resolve, Overrides};
use imprecise_bench::{execute, BenchError};

/// Sweeps imprecise-comparison algorithms over generated instances and
/// reports comparison counts, realized errors and bound checks.
///
/// Exit status: 0 when every hard check passes, 1 on a failed check,
/// 2 on a usage or configuration error.
#[derive(Debug, Parser)]
#[command(name = "imprecise-bench", version)]
struct Args {
    /// TOML sweep file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithms, e.g. max_find_2,sort_k.
    #[arg(long = "algo")]
    algorithms: Option<String>,
    /// Comma-separated instance sizes.
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated error parameters for max_find_k, select_k, sort_k
    /// and adversary_stress.
    #[arg(long)]
    k: Option<String>,
    /// Comma-separated generators: uniform(lo,hi), all-equal,
    /// ladder(reverse|forward), clustered(groups,gap).
    #[arg(long = "gen")]
    generators: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    /// Master seed from which every trial seed is derived.
    #[arg(long = "seeds")]
    master_seed: Option<u64>,
    /// Trials per (algorithm, generator, n, k, policy) cell.
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated tie policies: first, second, random, regret, adversary.
    #[arg(long = "policy")]
    policies: Option<String>,
    /// Randomized max-finding constants: practical or paper.
    #[arg(long)]
    profile: Option<String>,
    /// Order asked of select_k: min, quarter, median, max or a 1-based index.
    #[arg(long)]
    select_rank: Option<String>,
    /// Trial file; the summary goes to <out>.summary.<format>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Record wall-clock time per trial (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

fn run(args: Args) -> Result<bool, BenchError> {
    let file = args.config.as_deref().map(load_config).transpose()?;
    let flags = Overrides {
        algorithms: args.algorithms,
        generators: args.generators,
        n: args.n,
        k: args.k,
        policies: args.policies,
        delta: args.delta,
        trials: args.trials,
        master_seed: args.master_seed,
        profile: args.profile,
        select_rank: args.select_rank,
        timing: args.timing,
        format: args.format,
        out: args.out,
    };
    let cfg = resolve(file, flags)?;
    let reports = execute(
        &cfg,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )?;
    Ok(reports.iter().all(|r| r.violation.is_none()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
