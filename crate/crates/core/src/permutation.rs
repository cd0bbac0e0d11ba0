use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interval::safe_before;
use crate::knowledge::KnowledgeState;
use crate::scalar::Scalar;

/// An output order: `order[k]` is the interval placed at position `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    pub order: Vec<usize>,
}

impl Permutation {
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.order.len()];
        for &i in &self.order {
            if i >= seen.len() || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// `pi(i)`: the position of interval `i`.
    pub fn position(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            pos[i] = k;
        }
        pos
    }
}

/// True iff `pi` is a bijection on the instance's indices and every earlier item is at most
/// `delta` above every later one.
pub fn valid_permutation(inst: &Instance, values: &[Scalar], pi: &Permutation) -> bool {
    let n = inst.len();
    if pi.len() != n || values.len() != n || !pi.is_bijection() {
        return false;
    }
    // Only the running maximum of the prefix matters.
    let mut max_so_far: Option<&Scalar> = None;
    for &i in &pi.order {
        if let Some(m) = max_so_far {
            if m > &(&values[i] + &inst.delta) {
                return false;
            }
        }
        if max_so_far.is_none_or(|m| &values[i] > m) {
            max_so_far = Some(&values[i]);
        }
    }
    true
}

/// Emits an order that is correct for every realization consistent with `state.current`.
///
/// Arc `i -> j` is forced when only `i` before `j` is safe; pairs safe both ways are free and
/// broken by `(lo, index)`.
pub fn build_permutation(state: &KnowledgeState) -> Result<Permutation> {
    if let Some((i, j)) = state.first_dependent_pair() {
        return Err(Error::UnresolvedDependency(i, j));
    }
    let n = state.len();
    let delta = &state.delta;
    let cur = &state.current;
    let mut succ = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && safe_before(&cur[i], &cur[j], delta) && !safe_before(&cur[j], &cur[i], delta) {
                succ[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(Scalar, usize)>> = (0..n)
        .filter(|&i| indegree[i] == 0)
        .map(|i| Reverse((cur[i].lo.clone(), i)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, i))) = heap.pop() {
        order.push(i);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(Reverse((cur[j].lo.clone(), j)));
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).filter(|&i| indegree[i] > 0).collect();
        return Err(Error::CycleDetected(stuck));
    }
    Ok(Permutation { order })
}
