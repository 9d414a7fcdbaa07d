//! Deterministic max-finding: round-robin ranking, error-2 max-finding by
//! repeated elimination, the 1-cover, and the recursive error-k algorithm.

use crate::bounds::{ceil_sqrt, ceil_tol};
use crate::comparator::Comparator;
use crate::error::{Error, Result};
use crate::{validate_ids, ElementId};

/// Below this size (and always for k = 2) error-k max-finding falls back
/// to error-2 max-finding.
pub const MAX_FIND_K_CUTOFF: usize = 81;

/// Dense p×p bit matrix of "row defeats column".
#[derive(Debug, Clone)]
struct BitMatrix {
    p: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(p: usize) -> Self {
        Self {
            p,
            bits: vec![0; (p * p).div_ceil(64)],
        }
    }

    fn set(&mut self, r: usize, c: usize) {
        let idx = r * self.p + c;
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    fn get(&self, r: usize, c: usize) -> bool {
        let idx = r * self.p + c;
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }
}

/// Complete pairwise record of a round-robin tournament.
///
/// Participants are addressed by their position in [`participants`].
///
/// [`participants`]: RoundRobinResult::participants
#[derive(Debug, Clone)]
pub struct RoundRobinResult {
    participants: Vec<ElementId>,
    wins: Vec<usize>,
    beats: BitMatrix,
}

impl RoundRobinResult {
    pub fn participants(&self) -> &[ElementId] {
        &self.participants
    }

    /// Win count per participant position.
    pub fn wins(&self) -> &[usize] {
        &self.wins
    }

    pub fn len(&self) -> usize {
        self.participants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.participants.is_empty()
    }

    pub fn losses(&self, pos: usize) -> usize {
        self.len() - 1 - self.wins[pos]
    }

    /// Whether participant `a` defeated participant `b` (positions).
    pub fn defeats(&self, a: usize, b: usize) -> bool {
        self.beats.get(a, b)
    }

    /// Participant with the most wins; ties go to the lowest id.
    pub fn top_by_wins(&self) -> ElementId {
        let pos = (0..self.len())
            .max_by(|&a, &b| {
                self.wins[a]
                    .cmp(&self.wins[b])
                    .then(self.participants[b].cmp(&self.participants[a]))
            })
            .expect("round robin has at least one participant");
        self.participants[pos]
    }
}

/// Plays every pair of `ids` once.
pub fn round_robin(cmp: &mut Comparator, ids: &[ElementId]) -> Result<RoundRobinResult> {
    validate_ids(cmp.len(), ids)?;
    Ok(round_robin_unchecked(cmp, ids))
}

pub(crate) fn round_robin_unchecked(cmp: &mut Comparator, ids: &[ElementId]) -> RoundRobinResult {
    let p = ids.len();
    let mut wins = vec![0; p];
    let mut beats = BitMatrix::new(p);
    for a in 0..p {
        for b in a + 1..p {
            if cmp.beats(ids[a], ids[b]) {
                wins[a] += 1;
                beats.set(a, b);
            } else {
                wins[b] += 1;
                beats.set(b, a);
            }
        }
    }
    RoundRobinResult {
        participants: ids.to_vec(),
        wins,
        beats,
    }
}

/// Participants in descending order of wins, ties by ascending id.
///
/// Any earlier element is at most 2δ below any later one.
pub fn rank_by_wins(result: &RoundRobinResult) -> Vec<ElementId> {
    let mut order: Vec<usize> = (0..result.len()).collect();
    order.sort_by(|&a, &b| {
        result.wins[b]
            .cmp(&result.wins[a])
            .then(result.participants[a].cmp(&result.participants[b]))
    });
    order.into_iter().map(|p| result.participants[p]).collect()
}

/// Greedy 1-max-set of size at most `max(1, ceil(log2 p))`.
///
/// Repeatedly picks, among participants neither chosen nor defeated by a
/// chosen one, the element with the most wins inside that residual set
/// (lowest id on ties). It wins at least half of its residual matches.
pub fn one_max_set_greedy(result: &RoundRobinResult) -> Vec<ElementId> {
    let p = result.len();
    let mut residual = vec![true; p];
    let mut remaining = p;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let members: Vec<usize> = (0..p).filter(|&a| residual[a]).collect();
        let residual_wins = |a: usize| members.iter().filter(|&&b| result.defeats(a, b)).count();
        let pick = members
            .iter()
            .copied()
            .max_by(|&a, &b| {
                residual_wins(a)
                    .cmp(&residual_wins(b))
                    .then(result.participants[b].cmp(&result.participants[a]))
            })
            .expect("residual set is non-empty");
        debug_assert!(2 * residual_wins(pick) + 1 >= remaining);
        chosen.push(result.participants[pick]);
        for &b in &members {
            if b == pick || result.defeats(pick, b) {
                residual[b] = false;
                remaining -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// `ceil(sqrt(n))`, the default subset size of error-2 max-finding.
pub fn default_subset_size(n: usize) -> usize {
    ceil_sqrt(n as u64) as usize
}

/// One elimination step of error-2 max-finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationRound {
    pub pivot: ElementId,
    pub pivot_wins: usize,
    pub candidates: usize,
    pub eliminated: usize,
}

#[derive(Debug, Clone)]
pub struct MaxFind2Trace {
    pub output: ElementId,
    pub subset_size: usize,
    pub rounds: Vec<EliminationRound>,
    pub final_round: RoundRobinResult,
}

/// Error-2 max-finding. `s` defaults to `ceil(sqrt(n))` and must satisfy
/// `1 < s <= n` when given.
pub fn max_find_2(cmp: &mut Comparator, ids: &[ElementId], s: Option<usize>) -> Result<ElementId> {
    Ok(max_find_2_traced(cmp, ids, s)?.output)
}

pub fn max_find_2_traced(
    cmp: &mut Comparator,
    ids: &[ElementId],
    s: Option<usize>,
) -> Result<MaxFind2Trace> {
    let sorted = validate_ids(cmp.len(), ids)?;
    let n = sorted.len();
    let s = match s {
        Some(s) if s <= 1 || s > n => {
            return Err(Error::InvalidParameter(format!(
                "subset size {s} outside 2..={n}"
            )))
        }
        Some(s) => s,
        None => default_subset_size(n).max(2),
    };
    Ok(eliminate(cmp, sorted, s))
}

/// Core loop on sorted, validated ids. `s >= 2`; `s` may exceed the input
/// size, in which case only the final tournament is played.
pub(crate) fn eliminate(
    cmp: &mut Comparator,
    mut candidates: Vec<ElementId>,
    s: usize,
) -> MaxFind2Trace {
    debug_assert!(s >= 2);
    let mut rounds = Vec::new();
    while candidates.len() > s {
        let tournament = round_robin_unchecked(cmp, &candidates[..s]);
        let pivot = tournament.top_by_wins();
        let pivot_wins = tournament.wins()[tournament
            .participants()
            .iter()
            .position(|&x| x == pivot)
            .unwrap()];
        let before = candidates.len();
        candidates.retain(|&c| c == pivot || !cmp.beats(pivot, c));
        rounds.push(EliminationRound {
            pivot,
            pivot_wins,
            candidates: before,
            eliminated: before - candidates.len(),
        });
    }
    let final_round = round_robin_unchecked(cmp, &candidates);
    MaxFind2Trace {
        output: final_round.top_by_wins(),
        subset_size: s,
        rounds,
        final_round,
    }
}

/// A 1-max-set found with `s = ceil(2 sqrt(n))`: every elimination pivot
/// plus the greedy 1-max-set of the final tournament. At most `sqrt(n)`
/// elements for `n >= 81`.
pub fn one_cover(cmp: &mut Comparator, ids: &[ElementId]) -> Result<Vec<ElementId>> {
    let sorted = validate_ids(cmp.len(), ids)?;
    Ok(one_cover_unchecked(cmp, sorted))
}

fn one_cover_unchecked(cmp: &mut Comparator, sorted: Vec<ElementId>) -> Vec<ElementId> {
    let s = ceil_sqrt(4 * sorted.len() as u64) as usize;
    let trace = eliminate(cmp, sorted, s.max(2));
    let mut cover: Vec<ElementId> = trace.rounds.iter().map(|r| r.pivot).collect();
    cover.extend(one_max_set_greedy(&trace.final_round));
    cover.sort_unstable();
    cover.dedup();
    cover
}

/// Cell size `max(81, ceil(4 n^{8/(3·2^k - 4)}))` for error-k max-finding.
pub fn cell_size(n: usize, k: u32) -> usize {
    let exponent = 8.0 / (3.0 * 2f64.powi(k as i32) - 4.0);
    ceil_tol(4.0 * (n as f64).powf(exponent)).max(MAX_FIND_K_CUTOFF)
}

/// Splits `ids` into consecutive cells of size `r`. A trailing remainder
/// smaller than 81 is merged into the previous cell.
pub fn equipartition(ids: &[ElementId], r: usize) -> Vec<&[ElementId]> {
    let mut cells: Vec<&[ElementId]> = ids.chunks(r.max(1)).collect();
    if cells.len() >= 2 && cells.last().unwrap().len() < MAX_FIND_K_CUTOFF {
        let tail = cells.pop().unwrap().len();
        let prev = cells.pop().unwrap().len();
        let start = ids.len() - tail - prev;
        cells.push(&ids[start..]);
    }
    cells
}

/// Error-k max-finding for `k >= 2`.
///
/// Covers each cell with a 1-max-set and recurses with `k - 1` on the
/// union of the covers; error-2 max-finding handles `k = 2` and inputs of
/// at most 81 elements.
pub fn max_find_k(cmp: &mut Comparator, ids: &[ElementId], k: u32) -> Result<ElementId> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "error k = {k} must be at least 2"
        )));
    }
    let mut current = validate_ids(cmp.len(), ids)?;
    let mut level = k;
    loop {
        let n = current.len();
        if level == 2 || n <= MAX_FIND_K_CUTOFF {
            let s = default_subset_size(n).max(2);
            return Ok(eliminate(cmp, current, s).output);
        }
        let r = cell_size(n, level);
        let mut union = Vec::new();
        for cell in equipartition(&current, r) {
            union.extend(one_cover_unchecked(cmp, cell.to_vec()));
        }
        union.sort_unstable();
        current = union;
        level -= 1;
    }
}
