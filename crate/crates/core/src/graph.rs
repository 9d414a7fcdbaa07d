//! The comparison graph: every answered comparison as a directed edge
//! from the claimed winner to the claimed loser.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::ElementId;

/// Result of one comparison: `winner` was claimed to be at least `loser`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComparisonOutcome {
    pub winner: ElementId,
    pub loser: ElementId,
}

impl ComparisonOutcome {
    pub fn new(winner: ElementId, loser: ElementId) -> Self {
        debug_assert_ne!(winner, loser);
        Self { winner, loser }
    }
}

/// Directed graph of the comparisons made during one run.
///
/// Each unordered pair is recorded at most once; the pair map doubles as
/// the comparator's answer cache.
#[derive(Debug, Clone, Default)]
pub struct ComparisonGraph {
    n: usize,
    out: Vec<Vec<ElementId>>,
    log: Vec<ComparisonOutcome>,
    pairs: FxHashMap<u64, bool>,
}

#[inline]
fn pair_key(i: ElementId, j: ElementId) -> (u64, bool) {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    (((lo as u64) << 32) | hi as u64, i < j)
}

impl ComparisonGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "element ids must fit in 32 bits");
        Self {
            n,
            out: vec![Vec::new(); n],
            log: Vec::new(),
            pairs: FxHashMap::default(),
        }
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edge_count(&self) -> usize {
        self.log.len()
    }

    pub fn out_degree(&self, id: ElementId) -> usize {
        self.out[id].len()
    }

    /// Losers of `id`, in the order the comparisons were made.
    pub fn successors(&self, id: ElementId) -> &[ElementId] {
        &self.out[id]
    }

    /// All edges in insertion order.
    pub fn edges(&self) -> &[ComparisonOutcome] {
        &self.log
    }

    /// Cached outcome for the unordered pair `{i, j}`, if it was compared.
    pub fn outcome(&self, i: ElementId, j: ElementId) -> Option<ComparisonOutcome> {
        let (key, i_is_lo) = pair_key(i, j);
        self.pairs.get(&key).map(|&lo_wins| {
            if lo_wins == i_is_lo {
                ComparisonOutcome::new(i, j)
            } else {
                ComparisonOutcome::new(j, i)
            }
        })
    }

    pub fn has_edge(&self, winner: ElementId, loser: ElementId) -> bool {
        self.outcome(winner, loser)
            .is_some_and(|o| o.winner == winner)
    }

    /// Records a fresh outcome. Returns `false` (and changes nothing) when
    /// the pair is already present.
    pub(crate) fn record(&mut self, outcome: ComparisonOutcome) -> bool {
        let (key, winner_is_lo) = pair_key(outcome.winner, outcome.loser);
        if self.pairs.contains_key(&key) {
            return false;
        }
        self.pairs.insert(key, winner_is_lo);
        self.out[outcome.winner].push(outcome.loser);
        self.log.push(outcome);
        true
    }

    pub fn check_id(&self, id: ElementId) -> Result<()> {
        if id < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { id, n: self.n })
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: ElementId) -> Result<Vec<Option<usize>>> {
        self.check_id(source)?;
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.out[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Edge list as `winner,loser` lines, one per comparison.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.log.len() * 8);
        for e in &self.log {
            let _ = writeln!(s, "{},{}", e.winner, e.loser);
        }
        s
    }
}

/// Shortest directed path length from `source` to `target`, or `None`
/// when `target` is unreachable.
pub fn graph_distance(
    graph: &ComparisonGraph,
    source: ElementId,
    target: ElementId,
) -> Result<Option<usize>> {
    graph.check_id(target)?;
    Ok(graph.distances_from(source)?[target])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph() -> ComparisonGraph {
        let mut g = ComparisonGraph::new(4);
        g.record(ComparisonOutcome::new(0, 1));
        g.record(ComparisonOutcome::new(1, 2));
        g
    }

    #[test]
    fn distances() {
        let g = path_graph();
        assert_eq!(graph_distance(&g, 0, 1).unwrap(), Some(1));
        assert_eq!(graph_distance(&g, 0, 0).unwrap(), Some(0));
        assert_eq!(graph_distance(&g, 0, 2).unwrap(), Some(2));
        assert_eq!(graph_distance(&g, 2, 0).unwrap(), None);
        assert_eq!(graph_distance(&g, 0, 3).unwrap(), None);
        assert!(graph_distance(&g, 0, 9).is_err());
    }

    #[test]
    fn pair_recorded_once() {
        let mut g = ComparisonGraph::new(3);
        assert!(g.record(ComparisonOutcome::new(2, 0)));
        assert!(!g.record(ComparisonOutcome::new(0, 2)));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.outcome(0, 2), Some(ComparisonOutcome::new(2, 0)));
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.out_degree(2), 1);
        assert_eq!(g.out_degree(0), 0);
    }

    #[test]
    fn csv_export() {
        assert_eq!(path_graph().to_csv(), "0,1\n1,2\n");
    }
}
