//! The min-out-degree adversary and the value realization that makes its
//! answers consistent after the fact.
//!
//! The adversary always declares the element with the smaller out-degree
//! the winner, so high out-degrees (and therefore short paths from any one
//! vertex) are expensive to build. Once a run finishes, setting each
//! element's value to its BFS distance from a chosen anchor yields an
//! instance with δ = 1 under which every logged answer was legal.

use crate::comparator::Oracle;
use crate::error::Result;
use crate::graph::{ComparisonGraph, ComparisonOutcome};
use crate::instance::Instance;
use crate::ElementId;

/// Answers each fresh query in favour of the element with the smaller
/// out-degree. On equal degrees the higher id wins.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinOutDegree;

impl MinOutDegree {
    pub fn respond(graph: &ComparisonGraph, i: ElementId, j: ElementId) -> ElementId {
        let (di, dj) = (graph.out_degree(i), graph.out_degree(j));
        if di == dj {
            i.max(j)
        } else if di > dj {
            j
        } else {
            i
        }
    }
}

impl Oracle for MinOutDegree {
    fn winner(&mut self, i: ElementId, j: ElementId, graph: &ComparisonGraph) -> ElementId {
        Self::respond(graph, i, j)
    }
}

/// Integer values recovered from a comparison graph: BFS distance from the
/// anchor, or `n` for unreachable elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedValues {
    pub anchor: ElementId,
    pub values: Vec<usize>,
}

impl RealizedValues {
    /// The realized values as an instance with δ = 1.
    pub fn to_instance(&self) -> Instance {
        Instance::new(self.values.iter().map(|&v| v as f64).collect(), 1.0)
            .expect("realized values are a non-empty finite vector")
    }

    /// Recorded edges whose answer would be illegal under the realized
    /// values, i.e. the loser is more than one unit above the winner.
    pub fn illegal_edges<'g>(
        &'g self,
        graph: &'g ComparisonGraph,
    ) -> impl Iterator<Item = ComparisonOutcome> + 'g {
        graph
            .edges()
            .iter()
            .copied()
            .filter(|e| self.values[e.winner] + 1 < self.values[e.loser])
    }

    pub fn is_consistent_with(&self, graph: &ComparisonGraph) -> bool {
        self.illegal_edges(graph).next().is_none()
    }

    /// Longest distance from the anchor, which is the anchor's error under
    /// the realized instance.
    pub fn eccentricity(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Realizes values for `graph` with `anchor` at value 0.
pub fn realize_values(graph: &ComparisonGraph, anchor: ElementId) -> Result<RealizedValues> {
    let n = graph.len();
    let values = graph
        .distances_from(anchor)?
        .into_iter()
        .map(|d| d.unwrap_or(n))
        .collect();
    Ok(RealizedValues { anchor, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Comparator;

    #[test]
    fn equal_degrees_favour_higher_id() {
        let mut adv = Comparator::adversary(10);
        assert_eq!(adv.compare(3, 7).unwrap().winner, 7);
        // d(7) = 1 >= d(9) = 0
        assert_eq!(adv.compare(7, 9).unwrap().winner, 9);
        assert_eq!(adv.compare(9, 7).unwrap().winner, 9);
    }

    #[test]
    fn round_robin_on_three() {
        // (0,1): tie on degree 0, 1 wins. (0,2): tie again, 2 wins.
        // (1,2): both have degree 1, 2 wins.
        let mut adv = Comparator::adversary(3);
        let winners: Vec<_> = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .map(|(i, j)| adv.compare(i, j).unwrap().winner)
            .collect();
        assert_eq!(winners, vec![1, 2, 2]);
        let r = realize_values(adv.graph(), 2).unwrap();
        assert_eq!(r.values, vec![1, 1, 0]);
        assert!(r.is_consistent_with(adv.graph()));
    }

    #[test]
    fn realization_examples() {
        let mut g = ComparisonGraph::new(4);
        assert_eq!(realize_values(&g, 0).unwrap().values, vec![0, 4, 4, 4]);

        g.record(ComparisonOutcome::new(0, 1));
        let r = realize_values(&g, 0).unwrap();
        assert_eq!(r.values, vec![0, 1, 4, 4]);

        g.record(ComparisonOutcome::new(1, 2));
        let r = realize_values(&g, 0).unwrap();
        assert_eq!(&r.values[..3], &[0, 1, 2]);
        assert!(r.is_consistent_with(&g));
        assert_eq!(r.eccentricity(), 4);
        assert!(realize_values(&g, 4).is_err());
    }

    #[test]
    fn inconsistency_is_detected() {
        let mut g = ComparisonGraph::new(3);
        g.record(ComparisonOutcome::new(0, 1));
        g.record(ComparisonOutcome::new(1, 2));
        // Hand-made values where 1 beat 2 although 2 is two units higher.
        let bogus = RealizedValues {
            anchor: 0,
            values: vec![0, 0, 2],
        };
        assert_eq!(
            bogus.illegal_edges(&g).collect::<Vec<_>>(),
            vec![ComparisonOutcome::new(1, 2)]
        );
    }
}
