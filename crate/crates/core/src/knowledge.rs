use std::collections::BTreeMap;

use num_traits::Zero;

use crate::instance::Instance;
use crate::interval::{dependent, singleton_witness_static, singleton_witness_value, UncertainInterval};
use crate::scalar::Scalar;

/// What an algorithm currently knows about an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeState {
    pub delta: Scalar,
    pub original: Vec<UncertainInterval>,
    pub current: Vec<UncertainInterval>,
    pub query_counts: Vec<usize>,
    pub spent: Scalar,
    pub known_values: BTreeMap<usize, Scalar>,
}

impl KnowledgeState {
    pub fn new(inst: &Instance) -> Self {
        Self::from_intervals(inst.delta.clone(), inst.intervals.clone())
    }

    pub fn from_intervals(delta: Scalar, intervals: Vec<UncertainInterval>) -> Self {
        let n = intervals.len();
        Self {
            delta,
            original: intervals.clone(),
            current: intervals,
            query_counts: vec![0; n],
            spent: Scalar::zero(),
            known_values: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.current.len()
    }

    pub fn is_empty(&self) -> bool {
        self.current.is_empty()
    }

    pub fn is_queried(&self, i: usize) -> bool {
        self.query_counts[i] > 0
    }

    pub fn is_dependent(&self, i: usize, j: usize) -> bool {
        i != j && dependent(&self.current[i], &self.current[j], &self.delta)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.is_dependent(i, j)).collect()
    }

    pub fn has_neighbor(&self, i: usize) -> bool {
        (0..self.len()).any(|j| self.is_dependent(i, j))
    }

    /// All dependent pairs `(i, j)` with `i < j` in lexicographic order.
    pub fn dependent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.is_dependent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn first_dependent_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).find_map(|i| (i + 1..n).find(|&j| self.is_dependent(i, j)).map(|j| (i, j)))
    }

    pub fn has_dependency(&self) -> bool {
        self.first_dependent_pair().is_some()
    }

    /// Replaces the current interval of `i` by `[lo, hi]` and records the charge.
    pub fn refine(&mut self, i: usize, lo: Scalar, hi: Scalar, charged: &Scalar) {
        debug_assert!(self.current[i].lo <= lo && hi <= self.current[i].hi);
        if lo == hi {
            self.known_values.insert(i, lo.clone());
        }
        self.current[i].lo = lo;
        self.current[i].hi = hi;
        self.query_counts[i] += 1;
        self.spent += charged;
    }

    /// Smallest unqueried `i` whose interval strictly contains `[v - delta, v + delta]` for a known value `v`.
    pub fn value_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&i| {
            !self.is_queried(i)
                && self
                    .known_values
                    .iter()
                    .any(|(&j, v)| j != i && singleton_witness_value(&self.current[i], v, &self.delta))
        })
    }

    /// Smallest `i` with `current_i ⊃ [current_j.lo - delta, current_j.hi + delta]` for some `j ≠ i`.
    pub fn static_witness(&self, eligible: impl Fn(usize) -> bool) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&i| {
            eligible(i)
                && (0..n).any(|j| j != i && singleton_witness_static(&self.current[i], &self.current[j], &self.delta))
        })
    }
}
