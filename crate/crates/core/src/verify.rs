//! Ground-truth predicates used by the tests and the harness.
//!
//! All error parameters `k` are measured in units of δ and may be any
//! non-negative real.

use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;
use crate::instance::Instance;
use crate::ElementId;

/// Realized error of a max-finding output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// `max(0, max_j values[j] - values[e]) / δ`.
    pub realized_error: f64,
    pub target_k: f64,
    pub passed: bool,
}

fn check_element(instance: &Instance, e: ElementId) -> Result<()> {
    if e < instance.len() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            id: e,
            n: instance.len(),
        })
    }
}

/// True iff every element is at most `k·δ` above `e`.
pub fn verify_k_max(instance: &Instance, e: ElementId, k: f64) -> Result<bool> {
    check_element(instance, e)?;
    Ok(instance.max_value() - instance.value(e) <= k * instance.delta())
}

/// True iff every later element of `ordering` is `k`-greater than every
/// earlier one.
pub fn verify_k_sorted(instance: &Instance, ordering: &[ElementId], k: f64) -> Result<bool> {
    check_permutation(instance.len(), ordering)?;
    let slack = k * instance.delta();
    let mut running_max = f64::NEG_INFINITY;
    for &id in ordering {
        let v = instance.value(id);
        if v < running_max - slack {
            return Ok(false);
        }
        running_max = running_max.max(v);
    }
    Ok(true)
}

/// Smallest `k` for which `ordering` is `k`-sorted.
pub fn sorted_error(instance: &Instance, ordering: &[ElementId]) -> Result<f64> {
    check_permutation(instance.len(), ordering)?;
    let mut running_max = f64::NEG_INFINITY;
    let mut worst = 0.0f64;
    for &id in ordering {
        let v = instance.value(id);
        worst = worst.max(running_max - v);
        running_max = running_max.max(v);
    }
    Ok(worst / instance.delta())
}

/// Canonical split of the elements other than `e`: ascending by value,
/// then by id; the first `i - 1` form the low side.
fn canonical_sides(instance: &Instance, e: ElementId, i: usize) -> Result<(f64, f64)> {
    check_element(instance, e)?;
    let n = instance.len();
    if i == 0 || i > n {
        return Err(Error::InvalidParameter(format!(
            "order {i} outside 1..={n}"
        )));
    }
    let mut others: Vec<ElementId> = (0..n).filter(|&x| x != e).collect();
    others.sort_by(|&a, &b| {
        instance
            .value(a)
            .total_cmp(&instance.value(b))
            .then(a.cmp(&b))
    });
    let ve = instance.value(e);
    let (low, high) = others.split_at(i - 1);
    let low_max = low.iter().map(|&x| instance.value(x)).fold(ve, f64::max);
    let high_min = high.iter().map(|&x| instance.value(x)).fold(ve, f64::min);
    Ok((low_max, high_min))
}

/// True iff `e` is of `k`-order `i` (1-based; `i = n` is the maximum).
///
/// Uses the canonical partition: sorting the other elements by true value
/// and splitting after the first `i - 1` simultaneously minimizes the low
/// side's maximum and maximizes the high side's minimum, so it satisfies
/// the constraints whenever any partition does.
pub fn verify_k_order(instance: &Instance, e: ElementId, i: usize, k: f64) -> Result<bool> {
    let (low_max, high_min) = canonical_sides(instance, e, i)?;
    Ok(high_min >= low_max - k * instance.delta())
}

/// Smallest `k` for which `e` is of `k`-order `i`.
pub fn order_error(instance: &Instance, e: ElementId, i: usize) -> Result<f64> {
    let (low_max, high_min) = canonical_sides(instance, e, i)?;
    Ok((low_max - high_min).max(0.0) / instance.delta())
}

/// True iff every vertex is reachable from `e` in at most `k` hops.
pub fn verify_k_king(graph: &ComparisonGraph, e: ElementId, k: usize) -> Result<bool> {
    Ok(graph
        .distances_from(e)?
        .iter()
        .all(|d| d.is_some_and(|d| d <= k)))
}

pub fn realized_error(instance: &Instance, e: ElementId, target_k: f64) -> Result<ErrorReport> {
    check_element(instance, e)?;
    let gap = (instance.max_value() - instance.value(e)).max(0.0);
    Ok(ErrorReport {
        realized_error: gap / instance.delta(),
        target_k,
        passed: gap <= target_k * instance.delta(),
    })
}

/// Whether `set` contains an element within `k·δ` of the maximum.
pub fn is_k_max_set(instance: &Instance, set: &[ElementId], k: f64) -> Result<bool> {
    for &e in set {
        if verify_k_max(instance, e, k)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub(crate) fn check_permutation(n: usize, ordering: &[ElementId]) -> Result<()> {
    if ordering.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut seen = vec![false; n];
    for &id in ordering {
        if id >= n || std::mem::replace(&mut seen[id], true) {
            return Err(Error::NotAPermutation { n });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ComparisonOutcome;

    fn inst(values: &[f64], delta: f64) -> Instance {
        Instance::new(values.to_vec(), delta).unwrap()
    }

    #[test]
    fn k_max() {
        let x = inst(&[0.0, 1.0, 2.0], 1.0);
        assert!(verify_k_max(&x, 2, 0.0).unwrap());
        assert!(verify_k_max(&x, 0, 2.0).unwrap());
        assert!(!verify_k_max(&x, 0, 1.0).unwrap());
        let flat = inst(&[3.0; 4], 1.0);
        assert!((0..4).all(|e| verify_k_max(&flat, e, 0.0).unwrap()));
        assert!(verify_k_max(&x, 3, 1.0).is_err());
    }

    #[test]
    fn k_sorted() {
        let x = inst(&[0.0, 1.0, 2.0, 3.0], 1.0);
        assert!(verify_k_sorted(&x, &[0, 1, 2, 3], 0.0).unwrap());
        // Reverse ladder left untouched.
        let rev = [3, 2, 1, 0];
        assert!(!verify_k_sorted(&x, &rev, 2.0).unwrap());
        assert!(verify_k_sorted(&x, &rev, 3.0).unwrap());
        assert_eq!(sorted_error(&x, &rev).unwrap(), 3.0);

        let gap = inst(&[0.0, 5.0], 1.0);
        assert!(!verify_k_sorted(&gap, &[1, 0], 2.0).unwrap());
        assert_eq!(
            verify_k_sorted(&gap, &[1, 1], 2.0),
            Err(Error::NotAPermutation { n: 2 })
        );
        assert!(verify_k_sorted(&gap, &[0], 2.0).is_err());
    }

    #[test]
    fn k_order() {
        let x = inst(&[0.0, 1.0, 2.0, 3.0], 1.0);
        assert!(verify_k_order(&x, 1, 2, 1.0).unwrap());
        let two = inst(&[0.0, 3.0], 1.0);
        assert!(!verify_k_order(&two, 0, 2, 1.0).unwrap());
        assert_eq!(order_error(&two, 0, 2).unwrap(), 3.0);
        for k in [0.0, 1.0, 5.0] {
            assert!(verify_k_order(&x, 3, 4, k).unwrap());
        }
        assert!(verify_k_order(&x, 0, 0, 1.0).is_err());
        assert!(verify_k_order(&x, 0, 5, 1.0).is_err());
    }

    #[test]
    fn k_king() {
        let mut star = ComparisonGraph::new(4);
        for v in 1..4 {
            star.record(ComparisonOutcome::new(0, v));
        }
        assert!(verify_k_king(&star, 0, 1).unwrap());

        let mut path = ComparisonGraph::new(3);
        path.record(ComparisonOutcome::new(0, 1));
        path.record(ComparisonOutcome::new(1, 2));
        assert!(!verify_k_king(&path, 0, 1).unwrap());
        assert!(verify_k_king(&path, 0, 2).unwrap());

        assert!(verify_k_king(&ComparisonGraph::new(1), 0, 0).unwrap());
    }

    #[test]
    fn realized_error_scales_with_delta() {
        let x = inst(&[0.0, 1.0, 2.0], 1.0);
        assert_eq!(realized_error(&x, 2, 0.0).unwrap().realized_error, 0.0);
        let r = realized_error(&x, 0, 2.0).unwrap();
        assert_eq!(r.realized_error, 2.0);
        assert!(r.passed);
        let half = inst(&[0.0, 2.0], 0.5);
        assert_eq!(realized_error(&half, 0, 0.0).unwrap().realized_error, 4.0);
    }
}
