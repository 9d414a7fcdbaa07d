//! Randomized max-finding: the sampled tournament and the error-3
//! algorithm built on it.
//!
//! Each level randomly partitions the survivors into groups, plays a
//! round robin per group and advances only the elements with few losses,
//! which at least halves the field. A random sample of every level is set
//! aside; the final round robin on the sample plus the last survivors
//! returns a 3-max with high probability.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::comparator::Comparator;
use crate::error::{Error, Result};
use crate::maxfind::{round_robin_unchecked, RoundRobinResult};
use crate::{validate_ids, ElementId};

/// The constant `4^4 / (5e)^5`.
pub fn paper_sample_constant() -> f64 {
    256.0 / (5.0 * std::f64::consts::E).powi(5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Constants from the analysis. At desk-scale `n` the first level
    /// already fits under the sample size, so the run degenerates to a
    /// single round robin.
    PaperFaithful,
    /// Smaller groups and samples for empirical work.
    Practical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandParams {
    /// Confidence exponent: failure probability is at most `n^{-c}` under
    /// the analysis constants.
    pub c: u32,
    /// Group size `s`.
    pub group_size: usize,
    /// The constant `C` in the per-level sample size.
    pub c_const: f64,
    /// Extra multiplier on the per-level sample size.
    pub sample_scale: f64,
    pub profile: Profile,
}

impl RandParams {
    /// `s = 15(c+2) + 1`, `C = 4^4/(5e)^5`.
    pub fn paper_faithful(c: u32) -> Self {
        Self {
            c,
            group_size: 15 * (c as usize + 2) + 1,
            c_const: paper_sample_constant(),
            sample_scale: 1.0,
            profile: Profile::PaperFaithful,
        }
    }

    pub fn practical() -> Self {
        Self {
            c: 1,
            group_size: 15,
            c_const: 1.0,
            sample_scale: 0.1,
            profile: Profile::Practical,
        }
    }

    pub fn with_profile(profile: Profile) -> Self {
        match profile {
            Profile::PaperFaithful => Self::paper_faithful(1),
            Profile::Practical => Self::practical(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.group_size < 4 {
            return Err(Error::InvalidParameter(format!(
                "group size {} must be at least 4",
                self.group_size
            )));
        }
        if !(self.c_const > 0.0 && self.c_const.is_finite()) {
            return Err(Error::InvalidParameter(
                "sample constant must be positive".into(),
            ));
        }
        if !(self.sample_scale > 0.0 && self.sample_scale.is_finite()) {
            return Err(Error::InvalidParameter(
                "sample scale must be positive".into(),
            ));
        }
        Ok(())
    }

    fn sample_rate(&self, n: usize) -> f64 {
        let nf = n as f64;
        self.sample_scale * (self.c as f64 + 1.0) / self.c_const * nf.cbrt() * nf.ln()
    }

    /// Per-level sample size `ceil(((c+1)/C) n^{1/3} ln n)`, scaled, and at
    /// least 1.
    pub fn sample_size(&self, n: usize) -> usize {
        (self.sample_rate(n).ceil() as usize).max(1)
    }

    /// Bound `((c+1)/(C ln 2)) n^{1/3} ln² n` on the returned set, scaled.
    pub fn sampled_set_bound(&self, n: usize) -> f64 {
        self.sample_rate(n) * (n as f64).ln() / std::f64::consts::LN_2
    }

    /// Comparison budget `(s - 1) n` of the sampled tournament.
    pub fn comparison_budget(&self, n: usize) -> f64 {
        crate::bounds::sampled_tournament(n, self.group_size)
    }
}

impl Default for RandParams {
    fn default() -> Self {
        Self::paper_faithful(1)
    }
}

/// Level-by-level record of a sampled tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentLevels {
    /// Survivor sets `N_0, N_1, ...`, each sorted; the last one was
    /// absorbed whole into the sample.
    pub levels: Vec<Vec<ElementId>>,
    /// The returned set `W`, sorted.
    pub sampled: Vec<ElementId>,
}

/// Returns a set that contains a 1-max with high probability.
pub fn sampled_tournament(
    cmp: &mut Comparator,
    ids: &[ElementId],
    params: &RandParams,
    seed: u64,
) -> Result<Vec<ElementId>> {
    Ok(sampled_tournament_traced(cmp, ids, params, seed)?.sampled)
}

pub fn sampled_tournament_traced(
    cmp: &mut Comparator,
    ids: &[ElementId],
    params: &RandParams,
    seed: u64,
) -> Result<TournamentLevels> {
    params.validate()?;
    let mut level = validate_ids(cmp.len(), ids)?;
    let sample = params.sample_size(level.len());
    let s = params.group_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = Vec::new();
    let mut sampled = BTreeSet::new();
    loop {
        if level.len() <= sample {
            sampled.extend(level.iter().copied());
            levels.push(level);
            break;
        }
        for pos in index::sample(&mut rng, level.len(), sample) {
            sampled.insert(level[pos]);
        }
        let mut shuffled = level.clone();
        shuffled.shuffle(&mut rng);
        let mut next = Vec::new();
        for group in shuffled.chunks(s) {
            let rr = round_robin_unchecked(cmp, group);
            // Advance with strictly fewer than (g - 2)/4 losses.
            let cutoff = group.len() as i64 - 2;
            next.extend(
                (0..group.len())
                    .filter(|&p| 4 * (rr.losses(p) as i64) < cutoff)
                    .map(|p| group[p]),
            );
        }
        next.sort_unstable();
        levels.push(std::mem::replace(&mut level, next));
    }
    Ok(TournamentLevels {
        levels,
        sampled: sampled.into_iter().collect(),
    })
}

/// Error-3 max-finding with probability at least `1 - n^{-c}`: a round
/// robin on the sampled tournament's output.
pub fn randomized_max_3(
    cmp: &mut Comparator,
    ids: &[ElementId],
    params: &RandParams,
    seed: u64,
) -> Result<ElementId> {
    let w = sampled_tournament(cmp, ids, params, seed)?;
    Ok(round_robin_unchecked(cmp, &w).top_by_wins())
}

/// The element of order `ceil(p/2)` by ascending wins (ties by id), with
/// its win and loss counts. Both counts are at least
/// `ceil((ceil(p/2) - 1)/2)`.
pub fn median_wins_element(result: &RoundRobinResult) -> (ElementId, usize, usize) {
    let p = result.len();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| {
        result.wins()[a]
            .cmp(&result.wins()[b])
            .then(result.participants()[a].cmp(&result.participants()[b]))
    });
    let pos = order[p.div_ceil(2) - 1];
    (
        result.participants()[pos],
        result.wins()[pos],
        result.losses(pos),
    )
}

/// `ceil((ceil(p/2) - 1)/2)`.
pub fn median_guarantee(p: usize) -> usize {
    (p.div_ceil(2).saturating_sub(1)).div_ceil(2)
}
