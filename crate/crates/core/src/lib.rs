//! Max-finding, selection and sorting with imprecise comparisons.
//!
//! A comparison of two elements whose hidden values differ by more than δ
//! is answered correctly; closer pairs may be answered either way, possibly
//! adversarially. The algorithms here bound how far the output can drift
//! from the truth (the *error*, in units of δ) and how many comparisons
//! they spend:
//!
//! | task | error | comparisons |
//! |---|---|---|
//! | [`max_find_2`] | 2 | `2 n^{3/2}` |
//! | [`max_find_k`] | k | `54 n^{1 + 1/(3·2^{k-2} - 1)}` |
//! | [`randomized_max_3`] | 3 w.h.p. | `O(n)` |
//! | [`sort_2`] | 2 | `4 n^{3/2}` |
//! | [`select_k`] / [`sort_k`] | k | see [`bounds`] |
//!
//! Algorithms only see a [`Comparator`]; ground truth stays in the
//! [`Instance`] and is consulted by the predicates in [`verify`].

pub mod adversary;
pub mod bounds;
pub mod comparator;
pub mod error;
pub mod graph;
pub mod instance;
pub mod maxfind;
pub mod randmax;
pub mod selectsort;
pub mod verify;

pub use adversary::{realize_values, MinOutDegree, RealizedValues};
pub use comparator::{Comparator, Oracle, TiePolicy};
pub use error::{Error, Result};
pub use graph::{graph_distance, ComparisonGraph, ComparisonOutcome};
pub use instance::Instance;
pub use maxfind::{
    max_find_2, max_find_2_traced, max_find_k, one_cover, one_max_set_greedy, rank_by_wins,
    round_robin, RoundRobinResult,
};
pub use randmax::{
    median_wins_element, randomized_max_3, sampled_tournament, sampled_tournament_traced, Profile,
    RandParams, TournamentLevels,
};
pub use selectsort::{k_pivot, select_k, sort_2, sort_k, PivotCertificate};

/// Index of an element in its instance.
pub type ElementId = usize;

/// Checks that `ids` is a non-empty set of distinct ids below `n` and
/// returns it sorted.
pub(crate) fn validate_ids(n: usize, ids: &[ElementId]) -> Result<Vec<ElementId>> {
    if ids.is_empty() {
        return Err(Error::Empty);
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateId(w[0]));
        }
    }
    let last = *sorted.last().unwrap();
    if last >= n {
        return Err(Error::OutOfRange { id: last, n });
    }
    Ok(sorted)
}
