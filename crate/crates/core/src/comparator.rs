//! The imprecise comparator.
//!
//! A [`Comparator`] answers "which of `i`, `j` is larger?" queries. When the
//! hidden values differ by more than δ the answer is forced; otherwise an
//! answer policy decides. Every fresh answer is logged in a
//! [`ComparisonGraph`] and repeated queries of the same unordered pair are
//! served from it for free.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversary::MinOutDegree;
use crate::error::{Error, Result};
use crate::graph::{ComparisonGraph, ComparisonOutcome};
use crate::instance::Instance;
use crate::ElementId;

/// An answer policy for pairs it is allowed to decide.
///
/// Returns the winner, which must be `i` or `j`. The graph passed in is
/// the state before this comparison.
pub trait Oracle {
    fn winner(&mut self, i: ElementId, j: ElementId, graph: &ComparisonGraph) -> ElementId;
}

impl<F> Oracle for F
where
    F: FnMut(ElementId, ElementId, &ComparisonGraph) -> ElementId,
{
    fn winner(&mut self, i: ElementId, j: ElementId, graph: &ComparisonGraph) -> ElementId {
        self(i, j, graph)
    }
}

/// How a truthful comparator answers pairs within δ of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePolicy {
    /// The first argument of the query wins.
    FirstWins,
    /// The second argument of the query wins.
    SecondWins,
    /// A fair coin from a private generator seeded with the given value.
    SeededRandom(u64),
    /// The element with the smaller true value wins (higher id on equal
    /// values).
    MaximizeRegret,
}

enum Ties {
    First,
    Second,
    Random(Box<ChaCha8Rng>),
    Regret,
    Oracle(Box<dyn Oracle>),
}

enum Answerer {
    Truthful { instance: Instance, ties: Ties },
    Free(Box<dyn Oracle>),
}

/// Single-run comparator state: answer policy plus the comparison graph.
pub struct Comparator {
    n: usize,
    graph: ComparisonGraph,
    answerer: Answerer,
    queries: u64,
}

impl std::fmt::Debug for Comparator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Comparator")
            .field("n", &self.n)
            .field("comparisons", &self.comparisons())
            .field("queries", &self.queries)
            .finish_non_exhaustive()
    }
}

impl Comparator {
    /// Truthful comparator over `instance` using a built-in tie policy.
    pub fn truthful(instance: Instance, policy: TiePolicy) -> Self {
        let ties = match policy {
            TiePolicy::FirstWins => Ties::First,
            TiePolicy::SecondWins => Ties::Second,
            TiePolicy::SeededRandom(seed) => {
                Ties::Random(Box::new(ChaCha8Rng::seed_from_u64(seed)))
            }
            TiePolicy::MaximizeRegret => Ties::Regret,
        };
        Self::build(instance.len(), Answerer::Truthful { instance, ties })
    }

    /// Truthful comparator whose within-δ answers come from `oracle`.
    /// Pairs farther apart than δ are answered correctly regardless of
    /// what the oracle would say.
    pub fn with_tie_oracle(instance: Instance, oracle: impl Oracle + 'static) -> Self {
        let ties = Ties::Oracle(Box::new(oracle));
        Self::build(instance.len(), Answerer::Truthful { instance, ties })
    }

    /// Comparator over `n` elements with no hidden instance; every answer
    /// comes from `oracle`. Consistent values can be recovered afterwards
    /// with [`realize_values`](crate::realize_values).
    pub fn unconstrained(n: usize, oracle: impl Oracle + 'static) -> Self {
        Self::build(n, Answerer::Free(Box::new(oracle)))
    }

    /// The min-out-degree adversary on `n` elements.
    pub fn adversary(n: usize) -> Self {
        Self::unconstrained(n, MinOutDegree)
    }

    fn build(n: usize, answerer: Answerer) -> Self {
        Self {
            n,
            graph: ComparisonGraph::new(n),
            answerer,
            queries: 0,
        }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All element ids, `0..n`.
    pub fn ids(&self) -> Vec<ElementId> {
        (0..self.n).collect()
    }

    pub fn graph(&self) -> &ComparisonGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ComparisonGraph {
        self.graph
    }

    /// Distinct pairs compared so far.
    pub fn comparisons(&self) -> u64 {
        self.graph.edge_count() as u64
    }

    /// All queries so far, including ones answered from the cache.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn compare(&mut self, i: ElementId, j: ElementId) -> Result<ComparisonOutcome> {
        if i == j {
            return Err(Error::SelfComparison(i));
        }
        self.graph.check_id(i)?;
        self.graph.check_id(j)?;
        self.queries += 1;
        if let Some(cached) = self.graph.outcome(i, j) {
            return Ok(cached);
        }
        let winner = self.answer(i, j);
        if winner != i && winner != j {
            return Err(Error::IllegalAnswer { i, j, winner });
        }
        let outcome = ComparisonOutcome::new(winner, if winner == i { j } else { i });
        self.graph.record(outcome);
        Ok(outcome)
    }

    /// Whether `i` defeats `j`.
    pub fn defeats(&mut self, i: ElementId, j: ElementId) -> Result<bool> {
        Ok(self.compare(i, j)?.winner == i)
    }

    /// `defeats` for ids already validated by the calling algorithm.
    pub(crate) fn beats(&mut self, i: ElementId, j: ElementId) -> bool {
        self.defeats(i, j)
            .expect("algorithm issued an invalid comparison")
    }

    fn answer(&mut self, i: ElementId, j: ElementId) -> ElementId {
        match &mut self.answerer {
            Answerer::Free(oracle) => oracle.winner(i, j, &self.graph),
            Answerer::Truthful { instance, ties } => {
                let (vi, vj) = (instance.value(i), instance.value(j));
                if (vi - vj).abs() > instance.delta() {
                    return if vi > vj { i } else { j };
                }
                match ties {
                    Ties::First => i,
                    Ties::Second => j,
                    Ties::Random(rng) => {
                        if rng.random::<bool>() {
                            i
                        } else {
                            j
                        }
                    }
                    Ties::Regret => {
                        if vi < vj || (vi == vj && i > j) {
                            i
                        } else {
                            j
                        }
                    }
                    Ties::Oracle(oracle) => oracle.winner(i, j, &self.graph),
                }
            }
        }
    }
}
