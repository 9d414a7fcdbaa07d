//! Single trials: run one algorithm on one instance, count, verify, and
//! check the matching comparison bound.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use imprecise::bounds;
use imprecise::maxfind::default_subset_size;
use imprecise::verify::{order_error, realized_error, sorted_error, verify_k_king, verify_k_max};
use imprecise::{
    max_find_2, max_find_k, rank_by_wins, realize_values, round_robin, sampled_tournament,
    select_k, sort_2, sort_k, Comparator, ElementId, Instance, MinOutDegree, Profile, RandParams,
    TiePolicy,
};
use serde::Serialize;

use crate::seed::TrialSeeds;
use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    RoundRobinSort,
    MaxFind2,
    MaxFindK,
    RandomizedMax3,
    Sort2,
    SelectK,
    SortK,
    BubbleSortBaseline,
    AdversaryStress,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Self::RoundRobinSort,
        Self::MaxFind2,
        Self::MaxFindK,
        Self::RandomizedMax3,
        Self::Sort2,
        Self::SelectK,
        Self::SortK,
        Self::BubbleSortBaseline,
        Self::AdversaryStress,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::RoundRobinSort => "round_robin_sort",
            Self::MaxFind2 => "max_find_2",
            Self::MaxFindK => "max_find_k",
            Self::RandomizedMax3 => "randomized_max_3",
            Self::Sort2 => "sort_2",
            Self::SelectK => "select_k",
            Self::SortK => "sort_k",
            Self::BubbleSortBaseline => "bubble_sort_baseline",
            Self::AdversaryStress => "adversary_stress",
        }
    }

    /// Whether the algorithm takes the `k` grid; the others have a fixed
    /// error target.
    pub fn takes_k(self) -> bool {
        matches!(
            self,
            Self::MaxFindK | Self::SelectK | Self::SortK | Self::AdversaryStress
        )
    }

    /// Error target reported for fixed-target algorithms.
    pub fn fixed_k(self) -> u32 {
        match self {
            Self::RandomizedMax3 => 3,
            Self::BubbleSortBaseline => 0,
            _ => 2,
        }
    }

    /// Exponent of the proven comparison upper bound, if any.
    pub fn upper_exponent(self, k: u32) -> Option<f64> {
        match self {
            Self::RoundRobinSort | Self::BubbleSortBaseline => Some(2.0),
            Self::MaxFind2 | Self::Sort2 => Some(1.5),
            Self::MaxFindK => Some(bounds::max_find_k_exponent(k)),
            Self::AdversaryStress if k == 2 => Some(1.5),
            Self::AdversaryStress => Some(bounds::max_find_k_exponent(k)),
            Self::RandomizedMax3 => Some(1.0),
            Self::SelectK | Self::SortK => Some(1.0 + 2f64.powi(1 - k as i32)),
        }
    }

    /// Exponent of the matching comparison lower bound, if any.
    pub fn lower_exponent(self, k: u32) -> Option<f64> {
        match self {
            Self::MaxFind2 | Self::MaxFindK | Self::AdversaryStress => {
                Some(bounds::max_find_lower_exponent(k))
            }
            Self::SelectK => Some(bounds::max_find_lower_exponent(k)),
            Self::Sort2 | Self::SortK | Self::RoundRobinSort => {
                Some(bounds::sort_lower_exponent(k))
            }
            Self::RandomizedMax3 | Self::BubbleSortBaseline => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| BenchError::Usage(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    First,
    Second,
    Random,
    Regret,
    /// Min-out-degree answers on every within-δ pair.
    Adversary,
}

impl Policy {
    pub const ALL: [Policy; 5] = [
        Self::First,
        Self::Second,
        Self::Random,
        Self::Regret,
        Self::Adversary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::First => "first",
            Self::Second => "second",
            Self::Random => "random",
            Self::Regret => "regret",
            Self::Adversary => "adversary",
        }
    }

    pub fn comparator(self, instance: &Instance, tie_seed: u64) -> Comparator {
        let inst = instance.clone();
        match self {
            Self::First => Comparator::truthful(inst, TiePolicy::FirstWins),
            Self::Second => Comparator::truthful(inst, TiePolicy::SecondWins),
            Self::Random => Comparator::truthful(inst, TiePolicy::SeededRandom(tie_seed)),
            Self::Regret => Comparator::truthful(inst, TiePolicy::MaximizeRegret),
            Self::Adversary => Comparator::with_tie_oracle(inst, MinOutDegree),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| BenchError::Usage(format!("unknown tie policy `{s}`")))
    }
}

/// Which order `select_k` is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectRank {
    Min,
    Quarter,
    Median,
    Max,
    /// 1-based; clamped to `n`.
    Index(usize),
}

impl SelectRank {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Self::Min => 1,
            Self::Quarter => n.div_ceil(4).max(1),
            Self::Median => n.div_ceil(2).max(1),
            Self::Max => n,
            Self::Index(i) => i.clamp(1, n),
        }
    }
}

impl fmt::Display for SelectRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Min => f.write_str("min"),
            Self::Quarter => f.write_str("quarter"),
            Self::Median => f.write_str("median"),
            Self::Max => f.write_str("max"),
            Self::Index(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for SelectRank {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s.trim() {
            "min" => Ok(Self::Min),
            "quarter" => Ok(Self::Quarter),
            "median" => Ok(Self::Median),
            "max" => Ok(Self::Max),
            other => match other.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(Self::Index(i)),
                _ => Err(BenchError::Usage(format!("bad select rank `{s}`"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialParams {
    /// Error parameter for the k-parameterized algorithms.
    pub k: u32,
    pub profile: Profile,
    pub select_rank: SelectRank,
    /// Record wall time; off by default so reports are reproducible.
    pub timing: bool,
}

impl Default for TrialParams {
    fn default() -> Self {
        Self {
            k: 3,
            profile: Profile::Practical,
            select_rank: SelectRank::Median,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub algorithm: String,
    pub n: usize,
    pub k: u32,
    pub seed: u64,
    pub comparisons: u64,
    pub bound: f64,
    pub bound_ok: bool,
    pub realized_error: f64,
    pub error_ok: bool,
    pub wall_time: f64,
    /// Description of a hard-assertion failure, if any.
    #[serde(skip)]
    pub violation: Option<String>,
}

/// A closed-form bound and whether its hypotheses hold for this run.
struct Bound {
    value: f64,
    hard: bool,
    name: String,
}

fn in_regime(n: usize, k: u32) -> bool {
    n >= 216 && bounds::k_in_range(k, n)
}

fn max_find_2_bound(n: usize) -> Bound {
    let s = default_subset_size(n).max(2).min(n.max(2));
    Bound {
        value: bounds::max_find_2(n, s),
        hard: s < n,
        name: format!("max-find-2 comparison bound (n-s)s+(n²-s²)/(s-1) with s={s}"),
    }
}

fn max_find_k_bound(n: usize, k: u32) -> Bound {
    if k == 2 {
        return max_find_2_bound(n);
    }
    Bound {
        value: bounds::max_find_k(n, k),
        hard: bounds::k_in_range(k, n),
        name: format!("error-k max-finding bound 54·n^(1+1/(3·2^(k-2)-1)) with k={k}"),
    }
}

/// Comparisons of a bubble sort that swaps whenever the left element
/// defeats the right one, producing an ascending order.
pub fn bubble_sort_baseline(cmp: &mut Comparator) -> Vec<ElementId> {
    let mut order = cmp.ids();
    let n = order.len();
    for pass in 0..n {
        let mut swapped = false;
        for j in 0..n.saturating_sub(pass + 1) {
            let (a, b) = (order[j], order[j + 1]);
            if cmp.defeats(a, b).expect("distinct in-range ids") {
                order.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    order
}

fn library(e: imprecise::Error) -> BenchError {
    BenchError::Algorithm(e.to_string())
}

/// Runs one trial under a fresh comparator.
pub fn run_trial(
    algorithm: Algorithm,
    instance: &Instance,
    params: &TrialParams,
    policy: Policy,
    seeds: TrialSeeds,
) -> Result<TrialReport, BenchError> {
    let n = instance.len();
    let k = if algorithm.takes_k() {
        params.k
    } else {
        algorithm.fixed_k()
    };
    if algorithm.takes_k() && k < 2 {
        return Err(BenchError::Usage(format!(
            "{algorithm} needs k >= 2, got {k}"
        )));
    }
    let target = k as f64;
    let started = Instant::now();
    let mut cmp = policy.comparator(instance, seeds.ties);
    let ids = cmp.ids();
    let mut violation = None;
    // Whether an error above target counts as a hard failure.
    let mut error_hard = true;

    let (error, bound) = match algorithm {
        Algorithm::RoundRobinSort => {
            let rr = round_robin(&mut cmp, &ids).map_err(library)?;
            let mut asc = rank_by_wins(&rr);
            asc.reverse();
            let bound = Bound {
                value: bounds::round_robin(n),
                hard: true,
                name: "round-robin count C(n,2)".into(),
            };
            (sorted_error(instance, &asc).map_err(library)?, bound)
        }
        Algorithm::MaxFind2 => {
            let e = max_find_2(&mut cmp, &ids, None).map_err(library)?;
            (
                realized_error(instance, e, target)
                    .map_err(library)?
                    .realized_error,
                max_find_2_bound(n),
            )
        }
        Algorithm::MaxFindK => {
            let e = max_find_k(&mut cmp, &ids, k).map_err(library)?;
            let err = realized_error(instance, e, target)
                .map_err(library)?
                .realized_error;
            (err, max_find_k_bound(n, k))
        }
        Algorithm::RandomizedMax3 => {
            error_hard = false;
            let rp = RandParams::with_profile(params.profile);
            let w = sampled_tournament(&mut cmp, &ids, &rp, seeds.algorithm).map_err(library)?;
            let e = round_robin(&mut cmp, &w).map_err(library)?.top_by_wins();
            let w_len = w.len() as f64;
            let bound = Bound {
                value: rp.comparison_budget(n) + w_len * w_len / 2.0,
                hard: true,
                name: "sampled-tournament budget (s-1)n plus |W|²/2".into(),
            };
            (
                realized_error(instance, e, target)
                    .map_err(library)?
                    .realized_error,
                bound,
            )
        }
        Algorithm::Sort2 => {
            let out = sort_2(&mut cmp, &ids).map_err(library)?;
            let bound = Bound {
                value: bounds::sort_2(n),
                hard: true,
                name: "error-2 sorting bound 4n^(3/2)".into(),
            };
            (sorted_error(instance, &out).map_err(library)?, bound)
        }
        Algorithm::SelectK => {
            let i = params.select_rank.resolve(n);
            let e = select_k(&mut cmp, &ids, i, k).map_err(library)?;
            let bound = Bound {
                value: bounds::select_k(n, k),
                hard: in_regime(n, k),
                name: format!(
                    "k-order selection bound 25·2^(k-1)n^(1+2^(1-k)) + 5·2^(2k-3)n^(2^(1-k))c_n with k={k}"
                ),
            };
            (order_error(instance, e, i).map_err(library)?, bound)
        }
        Algorithm::SortK => {
            let out = sort_k(&mut cmp, &ids, k).map_err(library)?;
            let bound = Bound {
                value: bounds::sort_k(n, k),
                hard: in_regime(n, k),
                name: format!("error-k sorting bound 7·4^k·n^(1+2^(1-k)) + n·c_n with k={k}"),
            };
            (sorted_error(instance, &out).map_err(library)?, bound)
        }
        Algorithm::BubbleSortBaseline => {
            error_hard = false;
            let out = bubble_sort_baseline(&mut cmp);
            let bound = Bound {
                value: bounds::pairs(n),
                hard: true,
                name: "distinct-pair count C(n,2)".into(),
            };
            (sorted_error(instance, &out).map_err(library)?, bound)
        }
        Algorithm::AdversaryStress => {
            cmp = Comparator::adversary(n);
            let e = if k == 2 {
                max_find_2(&mut cmp, &ids, None)
            } else {
                max_find_k(&mut cmp, &ids, k)
            }
            .map_err(library)?;
            let graph = cmp.graph();
            let realized = realize_values(graph, e).map_err(library)?;
            if !realized.is_consistent_with(graph) {
                violation.get_or_insert_with(|| {
                    "adversary answers are not realizable by BFS-distance values".to_string()
                });
            }
            let inst = realized.to_instance();
            for j in 0..=k as usize {
                let king = verify_k_king(graph, e, j).map_err(library)?;
                let kmax = verify_k_max(&inst, e, j as f64).map_err(library)?;
                if king != kmax {
                    violation.get_or_insert_with(|| {
                        format!("realized {j}-max and {j}-king disagree at the output")
                    });
                }
            }
            let err = realized_error(&inst, e, target)
                .map_err(library)?
                .realized_error;
            (err, max_find_k_bound(n, k))
        }
    };

    let comparisons = cmp.comparisons();
    let wall_time = if params.timing {
        started.elapsed().as_secs_f64()
    } else {
        0.0
    };
    let bound_ok = comparisons as f64 <= bound.value;
    if !bound_ok {
        let msg = format!(
            "{} violated: {comparisons} > {:.1} ({algorithm}, n={n})",
            bound.name, bound.value
        );
        if bound.hard {
            violation.get_or_insert(msg);
        } else {
            log::warn!("{msg}; outside the proven regime");
        }
    }
    let error_ok = algorithm == Algorithm::BubbleSortBaseline || error <= target + 1e-9;
    if !error_ok {
        let msg = format!("error {error} exceeds target {k} ({algorithm}, n={n})");
        if error_hard {
            violation.get_or_insert(msg);
        } else {
            log::warn!("{msg}");
        }
    }
    Ok(TrialReport {
        algorithm: algorithm.name().to_string(),
        n,
        k,
        seed: seeds.instance,
        comparisons,
        bound: bound.value,
        bound_ok,
        realized_error: error,
        error_ok,
        wall_time,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_instance, Direction, GeneratorKind, GeneratorSpec};

    fn ladder(n: usize) -> Instance {
        generate_instance(&GeneratorSpec {
            kind: GeneratorKind::Ladder(Direction::Reverse),
            n,
            delta: 1.0,
            seed: 0,
        })
        .unwrap()
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        for p in Policy::ALL {
            assert_eq!(p.name().parse::<Policy>().unwrap(), p);
        }
        assert!("quicksort".parse::<Algorithm>().is_err());
        assert_eq!("7".parse::<SelectRank>().unwrap(), SelectRank::Index(7));
        assert!("0".parse::<SelectRank>().is_err());
    }

    #[test]
    fn bubble_sort_leaves_reverse_ladder_alone() {
        let r = run_trial(
            Algorithm::BubbleSortBaseline,
            &ladder(30),
            &TrialParams::default(),
            Policy::Regret,
            TrialSeeds::from_instance_seed(0),
        )
        .unwrap();
        assert_eq!(r.realized_error, 29.0);
        assert_eq!(r.k, 0);
        assert!(r.error_ok && r.violation.is_none());
    }

    #[test]
    fn max_find_2_spot_bound() {
        let r = run_trial(
            Algorithm::MaxFind2,
            &ladder(100),
            &TrialParams::default(),
            Policy::Regret,
            TrialSeeds::from_instance_seed(0),
        )
        .unwrap();
        assert_eq!(r.bound, 2000.0);
        assert!(r.bound_ok && r.error_ok);
    }

    #[test]
    fn adversary_stress_is_clean() {
        for k in [2, 3] {
            let params = TrialParams {
                k,
                ..TrialParams::default()
            };
            let r = run_trial(
                Algorithm::AdversaryStress,
                &ladder(200),
                &params,
                Policy::First,
                TrialSeeds::from_instance_seed(1),
            )
            .unwrap();
            assert!(r.violation.is_none(), "{:?}", r.violation);
            assert!(r.realized_error <= k as f64);
        }
    }

    #[test]
    fn timing_off_gives_zero_wall_time() {
        let r = run_trial(
            Algorithm::Sort2,
            &ladder(50),
            &TrialParams::default(),
            Policy::Random,
            TrialSeeds::from_instance_seed(2),
        )
        .unwrap();
        assert_eq!(r.wall_time, 0.0);
    }

    #[test]
    fn k_below_two_rejected() {
        let params = TrialParams {
            k: 1,
            ..TrialParams::default()
        };
        let r = run_trial(
            Algorithm::SortK,
            &ladder(10),
            &params,
            Policy::First,
            TrialSeeds::from_instance_seed(0),
        );
        assert!(matches!(r, Err(BenchError::Usage(_))));
    }
}
