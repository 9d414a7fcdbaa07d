//! Error-2 sorting, k-pivots, k-order selection and error-k sorting.
//!
//! Orderings are ascending: the last element is the (approximate) maximum,
//! and order `i` is 1-based with `i = n` meaning the maximum.

use std::collections::{BTreeSet, HashMap};

use crate::bounds::{ceil_sqrt, ceil_tol, floor_tol};
use crate::comparator::Comparator;
use crate::error::{Error, Result};
use crate::maxfind::{rank_by_wins, round_robin_unchecked};
use crate::randmax::{median_guarantee, median_wins_element};
use crate::{validate_ids, ElementId};

/// Inputs up to this size are sorted by a single round robin.
pub const SORT_2_CUTOFF: usize = 64;
/// Inputs up to this size get a k-pivot from a single round robin.
pub const K_PIVOT_CUTOFF: usize = 215;
/// Inputs up to this size are handed to error-2 sorting by the error-k
/// selection and sorting routines.
pub const SELECT_SORT_CUTOFF: usize = 8;

/// A pivot together with equally sized sets it is approximately above
/// (`losing_set`) and below (`winning_set`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotCertificate {
    pub pivot: ElementId,
    /// Elements at most `kδ` above the pivot, sorted.
    pub losing_set: Vec<ElementId>,
    /// Elements at most `kδ` below the pivot, sorted.
    pub winning_set: Vec<ElementId>,
    pub k: u32,
}

impl PivotCertificate {
    /// The common size `m` of the two sets.
    pub fn coverage(&self) -> usize {
        self.losing_set.len().min(self.winning_set.len())
    }
}

/// Error-2 sorting with at most `4 n^{3/2}` comparisons.
pub fn sort_2(cmp: &mut Comparator, ids: &[ElementId]) -> Result<Vec<ElementId>> {
    let ids = validate_ids(cmp.len(), ids)?;
    Ok(sort_2_unchecked(cmp, ids))
}

enum Task {
    Sort(Vec<ElementId>),
    Emit(ElementId),
}

fn sort_2_unchecked(cmp: &mut Comparator, ids: Vec<ElementId>) -> Vec<ElementId> {
    let mut out = Vec::with_capacity(ids.len());
    let mut stack = vec![Task::Sort(ids)];
    while let Some(task) = stack.pop() {
        let set = match task {
            Task::Emit(x) => {
                out.push(x);
                continue;
            }
            Task::Sort(set) => set,
        };
        let n = set.len();
        if n <= SORT_2_CUTOFF {
            let rr = round_robin_unchecked(cmp, &set);
            out.extend(rank_by_wins(&rr).into_iter().rev());
            continue;
        }
        let s = ceil_sqrt(2 * n as u64) as usize;
        let rr = round_robin_unchecked(cmp, &set[..s]);
        let (x, _, _) = median_wins_element(&rr);
        let (below, above): (Vec<_>, Vec<_>) = set
            .iter()
            .copied()
            .filter(|&e| e != x)
            .partition(|&e| cmp.beats(x, e));
        stack.push(Task::Sort(above));
        stack.push(Task::Emit(x));
        stack.push(Task::Sort(below));
    }
    out
}

/// Finds a k-pivot for at least `n / (5·2^{k-1})` elements when
/// `n >= 216`; smaller inputs get the exact round-robin median guarantee.
pub fn k_pivot(cmp: &mut Comparator, ids: &[ElementId], k: u32) -> Result<PivotCertificate> {
    if k < 1 {
        return Err(Error::InvalidParameter("k-pivot needs k >= 1".into()));
    }
    if ids.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "k-pivot needs at least 3 elements, got {}",
            ids.len()
        )));
    }
    let ids = validate_ids(cmp.len(), ids)?;
    Ok(k_pivot_unchecked(cmp, &ids, k))
}

/// Group size `ceil(3 n^{1/(2^k - 1)})` of the recursive k-pivot step.
pub fn k_pivot_group_size(n: usize, k: u32) -> usize {
    ceil_tol(3.0 * (n as f64).powf(1.0 / (2f64.powi(k as i32) - 1.0)))
}

fn k_pivot_unchecked(cmp: &mut Comparator, ids: &[ElementId], k: u32) -> PivotCertificate {
    let n = ids.len();
    if k == 1 || n <= K_PIVOT_CUTOFF {
        let rr = round_robin_unchecked(cmp, ids);
        let (y, wins, losses) = median_wins_element(&rr);
        let m = wins.min(losses);
        let (losing_set, winning_set) = lowest_neighbours(cmp, y, ids, m);
        return PivotCertificate {
            pivot: y,
            losing_set,
            winning_set,
            k,
        };
    }

    let s = k_pivot_group_size(n, k);
    let s_prime = median_guarantee(s);
    let mut remaining: BTreeSet<ElementId> = ids.iter().copied().collect();
    let mut groups: HashMap<ElementId, (Vec<ElementId>, Vec<ElementId>)> = HashMap::new();
    let mut medians = Vec::new();
    while remaining.len() >= s {
        let group: Vec<ElementId> = remaining.iter().take(s).copied().collect();
        let rr = round_robin_unchecked(cmp, &group);
        let (y, _, _) = median_wins_element(&rr);
        let (lost, won) = lowest_neighbours(cmp, y, &group, s_prime);
        for e in lost.iter().chain(&won).chain(std::iter::once(&y)) {
            remaining.remove(e);
        }
        medians.push(y);
        groups.insert(y, (lost, won));
    }
    medians.sort_unstable();

    let inner = k_pivot_unchecked(cmp, &medians, k - 1);
    let mut losing_set = inner.losing_set.clone();
    for y in &inner.losing_set {
        losing_set.extend_from_slice(&groups[y].0);
    }
    let mut winning_set = inner.winning_set.clone();
    for y in &inner.winning_set {
        winning_set.extend_from_slice(&groups[y].1);
    }
    losing_set.sort_unstable();
    winning_set.sort_unstable();
    PivotCertificate {
        pivot: inner.pivot,
        losing_set,
        winning_set,
        k,
    }
}

/// The `m` lowest-id elements of `group` that lost to `y` and the `m`
/// lowest-id ones that beat it. `group` is sorted and already played.
fn lowest_neighbours(
    cmp: &mut Comparator,
    y: ElementId,
    group: &[ElementId],
    m: usize,
) -> (Vec<ElementId>, Vec<ElementId>) {
    let (mut lost, mut won) = (Vec::with_capacity(m), Vec::with_capacity(m));
    for &e in group.iter().filter(|&&e| e != y) {
        if cmp.beats(y, e) {
            if lost.len() < m {
                lost.push(e);
            }
        } else if won.len() < m {
            won.push(e);
        }
    }
    debug_assert!(lost.len() == m && won.len() == m);
    (lost, won)
}

/// Sample size `floor(n^{1 - 2^{1-k}})` for the selection pivot.
pub fn pivot_sample_size(n: usize, k: u32) -> usize {
    floor_tol((n as f64).powf(1.0 - 2f64.powi(1 - k as i32)))
}

/// Picks a (k-1)-pivot `y` from a sample and splits the rest of `set`
/// into a low side and a high side around it.
fn split(
    cmp: &mut Comparator,
    set: &[ElementId],
    k: u32,
) -> (Vec<ElementId>, ElementId, Vec<ElementId>) {
    let n = set.len();
    let sample = &set[..pivot_sample_size(n, k)];
    let cert = k_pivot_unchecked(cmp, sample, k - 1);
    let y = cert.pivot;
    let mut defeated = Vec::new();
    let mut lost_to = Vec::new();
    for &e in set.iter().filter(|&&e| e != y) {
        if cmp.beats(y, e) {
            defeated.push(e);
        } else {
            lost_to.push(e);
        }
    }
    let (low, high);
    if 2 * defeated.len() >= n - 1 {
        let excluded: BTreeSet<_> = cert.winning_set.iter().copied().collect();
        low = defeated
            .iter()
            .copied()
            .filter(|e| !excluded.contains(e))
            .collect::<Vec<_>>();
        let low_set: BTreeSet<_> = low.iter().copied().collect();
        high = set
            .iter()
            .copied()
            .filter(|e| *e != y && !low_set.contains(e))
            .collect();
    } else {
        let excluded: BTreeSet<_> = cert.losing_set.iter().copied().collect();
        high = lost_to
            .iter()
            .copied()
            .filter(|e| !excluded.contains(e))
            .collect::<Vec<_>>();
        let high_set: BTreeSet<_> = high.iter().copied().collect();
        low = set
            .iter()
            .copied()
            .filter(|e| *e != y && !high_set.contains(e))
            .collect();
    }
    (low, y, high)
}

/// Returns an element of k-order `i` (1-based) for `k >= 2`.
pub fn select_k(cmp: &mut Comparator, ids: &[ElementId], i: usize, k: u32) -> Result<ElementId> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "error k = {k} must be at least 2"
        )));
    }
    let mut set = validate_ids(cmp.len(), ids)?;
    if i == 0 || i > set.len() {
        return Err(Error::InvalidParameter(format!(
            "order {i} outside 1..={}",
            set.len()
        )));
    }
    let mut i = i;
    loop {
        if k == 2 || set.len() <= SELECT_SORT_CUTOFF {
            return Ok(sort_2_unchecked(cmp, set)[i - 1]);
        }
        let (low, y, high) = split(cmp, &set, k);
        if low.len() + 1 == i {
            return Ok(y);
        }
        if i <= low.len() {
            set = low;
        } else {
            i -= low.len() + 1;
            set = high;
        }
    }
}

enum KTask {
    Sort(Vec<ElementId>),
    Emit(ElementId),
}

/// Error-k sorting for `k >= 2`.
pub fn sort_k(cmp: &mut Comparator, ids: &[ElementId], k: u32) -> Result<Vec<ElementId>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "error k = {k} must be at least 2"
        )));
    }
    let ids = validate_ids(cmp.len(), ids)?;
    let mut out = Vec::with_capacity(ids.len());
    let mut stack = vec![KTask::Sort(ids)];
    while let Some(task) = stack.pop() {
        match task {
            KTask::Emit(y) => out.push(y),
            KTask::Sort(set) if set.is_empty() => {}
            KTask::Sort(set) if k == 2 || set.len() <= SELECT_SORT_CUTOFF => {
                out.extend(sort_2_unchecked(cmp, set));
            }
            KTask::Sort(set) => {
                let (low, y, high) = split(cmp, &set, k);
                stack.push(KTask::Sort(high));
                stack.push(KTask::Emit(y));
                stack.push(KTask::Sort(low));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_k_order, verify_k_sorted};
    use crate::{Instance, TiePolicy};

    fn forced(n: usize) -> (Instance, Comparator) {
        let values: Vec<f64> = (0..n).map(|i| 2.0 * ((i * 37) % n) as f64).collect();
        let inst = Instance::new(values, 1.0).unwrap();
        let cmp = Comparator::truthful(inst.clone(), TiePolicy::FirstWins);
        (inst, cmp)
    }

    fn ladder(n: usize) -> (Instance, Comparator) {
        let values: Vec<f64> = (0..n).map(|i| (n - 1 - i) as f64).collect();
        let inst = Instance::new(values, 1.0).unwrap();
        let cmp = Comparator::truthful(inst.clone(), TiePolicy::MaximizeRegret);
        (inst, cmp)
    }

    fn by_value(inst: &Instance) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = (0..inst.len()).collect();
        v.sort_by(|&a, &b| inst.value(a).total_cmp(&inst.value(b)));
        v
    }

    #[test]
    fn sort_2_small_is_one_round_robin() {
        let (_, mut c) = ladder(64);
        let ids = c.ids();
        sort_2(&mut c, &ids).unwrap();
        assert_eq!(c.comparisons(), 2016);

        let (_, mut c) = forced(1);
        assert_eq!(sort_2(&mut c, &[0]).unwrap(), vec![0]);
        assert_eq!(c.comparisons(), 0);
    }

    #[test]
    fn sort_2_exact_on_forced_instances() {
        for n in [2, 7, 64, 65, 300] {
            let (inst, mut c) = forced(n);
            let ids = c.ids();
            assert_eq!(sort_2(&mut c, &ids).unwrap(), by_value(&inst));
        }
    }

    #[test]
    fn sort_2_reverse_ladder_under_regret() {
        for n in [10, 100, 500] {
            let (inst, mut c) = ladder(n);
            let ids = c.ids();
            let out = sort_2(&mut c, &ids).unwrap();
            assert!(verify_k_sorted(&inst, &out, 2.0).unwrap());
            assert!(c.comparisons() as f64 <= crate::bounds::sort_2(n));
        }
    }

    #[test]
    fn k_pivot_on_five_forced() {
        let inst = Instance::new(vec![0.0, 2.0, 4.0, 6.0, 8.0], 1.0).unwrap();
        let mut c = Comparator::truthful(inst, TiePolicy::FirstWins);
        let cert = k_pivot(&mut c, &[0, 1, 2, 3, 4], 1).unwrap();
        // The median has two wins and two losses, so m = 2.
        assert_eq!(cert.pivot, 2);
        assert_eq!(cert.coverage(), 2);
        assert_eq!(cert.losing_set, vec![0, 1]);
        assert_eq!(cert.winning_set, vec![3, 4]);
    }

    #[test]
    fn k_pivot_parameter_errors() {
        let (_, mut c) = forced(10);
        assert!(k_pivot(&mut c, &[0, 1], 2).is_err());
        assert!(k_pivot(&mut c, &[0, 1, 2], 0).is_err());
    }

    #[test]
    fn k_pivot_base_case_at_215() {
        let (_, mut c) = ladder(215);
        let ids = c.ids();
        let cert = k_pivot(&mut c, &ids, 3).unwrap();
        assert_eq!(c.comparisons() as f64, crate::bounds::c_n(215));
        assert_eq!(cert.losing_set.len(), cert.winning_set.len());
    }

    #[test]
    fn k_pivot_recursive_coverage() {
        for (n, k) in [(216, 2), (1000, 2), (1000, 3), (5000, 3)] {
            let (inst, mut c) = ladder(n);
            let ids = c.ids();
            let cert = k_pivot(&mut c, &ids, k).unwrap();
            assert_eq!(cert.losing_set.len(), cert.winning_set.len());
            assert!(cert.coverage() as f64 >= crate::bounds::k_pivot_coverage(n, k));
            let py = inst.value(cert.pivot);
            let kd = k as f64 * inst.delta();
            assert!(cert.losing_set.iter().all(|&x| py >= inst.value(x) - kd));
            assert!(cert.winning_set.iter().all(|&x| inst.value(x) >= py - kd));
        }
    }

    #[test]
    fn select_k_small_forced_is_exact() {
        let (inst, _) = forced(8);
        let truth = by_value(&inst);
        for i in 1..=8 {
            let mut c = Comparator::truthful(inst.clone(), TiePolicy::FirstWins);
            let ids = c.ids();
            assert_eq!(select_k(&mut c, &ids, i, 5).unwrap(), truth[i - 1]);
        }
    }

    #[test]
    fn select_k_orders_on_ladder() {
        let n = 700;
        for i in [1, n / 4, n / 2, n] {
            let (inst, mut c) = ladder(n);
            let ids = c.ids();
            let e = select_k(&mut c, &ids, i, 3).unwrap();
            assert!(verify_k_order(&inst, e, i, 3.0).unwrap(), "i = {i}");
        }
    }

    #[test]
    fn select_k_parameter_errors() {
        let (_, mut c) = forced(10);
        let ids = c.ids();
        assert!(select_k(&mut c, &ids, 0, 3).is_err());
        assert!(select_k(&mut c, &ids, 11, 3).is_err());
        assert!(select_k(&mut c, &ids, 1, 1).is_err());
    }

    #[test]
    fn sort_k_small_matches_sort_2() {
        for n in 1..=8 {
            let (_, mut a) = ladder(n);
            let (_, mut b) = ladder(n);
            let ids = a.ids();
            assert_eq!(
                sort_k(&mut a, &ids, 4).unwrap(),
                sort_2(&mut b, &ids).unwrap()
            );
        }
    }

    #[test]
    fn sort_k_is_k_sorted() {
        for (n, k) in [(300, 3), (1000, 3), (1000, 4)] {
            let (inst, mut c) = ladder(n);
            let ids = c.ids();
            let out = sort_k(&mut c, &ids, k).unwrap();
            assert!(verify_k_sorted(&inst, &out, k as f64).unwrap());
        }
    }
}
