//! Offline optimum, the oblivious query set, and exhaustive oracles.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{instance_graph, min_cost_vertex_cover, DependencyGraph};
use crate::instance::Instance;
use crate::interval::{dependent, is_trivial, singleton_witness_value, UncertainInterval};
use crate::scalar::Scalar;

const BRUTE_FORCE_MAX_N: usize = 20;
const CPCP_MAX_STATES: u128 = 1_000_000;

/// Intervals that contain `[v_i - delta, v_i + delta]` for some other realized value `v_i`.
/// Every feasible query set includes all of them.
pub fn forced_set(inst: &Instance) -> Result<BTreeSet<usize>> {
    let values = inst.values()?;
    let n = inst.len();
    Ok((0..n)
        .filter(|&j| (0..n).any(|i| i != j && singleton_witness_value(&inst.intervals[j], &values[i], &inst.delta)))
        .collect())
}

/// Cheapest query set that certifies an order, given the realization.
///
/// The forced set plus a minimum-cost vertex cover of the dependency graph on the remaining
/// intervals.
pub fn optimum_query_set(inst: &Instance) -> Result<BTreeSet<usize>> {
    let forced = forced_set(inst)?;
    let g = instance_graph(inst);
    let keep: Vec<bool> = (0..inst.len()).map(|v| !forced.contains(&v)).collect();
    let mut out = min_cost_vertex_cover(&g.induced(&keep))?;
    out.extend(forced);
    Ok(out)
}

pub fn query_set_cost(inst: &Instance, set: &BTreeSet<usize>) -> Scalar {
    set.iter().fold(Scalar::zero(), |acc, &i| acc + &inst.intervals[i].cost)
}

/// The intervals after replacing every member of `set` by its realized point.
pub fn substitute(inst: &Instance, set: &BTreeSet<usize>) -> Result<Vec<UncertainInterval>> {
    let values = inst.values()?;
    Ok(inst
        .intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            if set.contains(&i) {
                UncertainInterval::point(values[i].clone(), iv.cost.clone())
            } else {
                iv.clone()
            }
        })
        .collect())
}

/// True iff querying exactly `set` leaves no dependent pair.
pub fn is_feasible_query_set(inst: &Instance, set: &BTreeSet<usize>) -> Result<bool> {
    let cur = substitute(inst, set)?;
    let n = cur.len();
    Ok((0..n).all(|i| (i + 1..n).all(|j| !dependent(&cur[i], &cur[j], &inst.delta))))
}

/// Result of exhaustive search: the optimum cost and every optimal query set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub cost: Scalar,
    pub minimizers: Vec<BTreeSet<usize>>,
}

impl BruteForce {
    /// The lexicographically smallest optimal set (as a sorted index list).
    pub fn canonical(&self) -> &BTreeSet<usize> {
        self.minimizers
            .iter()
            .min_by(|a, b| a.iter().cmp(b.iter()))
            .expect("at least one feasible set")
    }
}

/// Pairs that are dependent in the original instance, with a 2x2 table telling whether they
/// stay dependent for each (queried i, queried j) combination.
fn pair_tables(inst: &Instance, values: &[Scalar]) -> Vec<(usize, usize, [[bool; 2]; 2])> {
    let n = inst.len();
    let states: Vec<[UncertainInterval; 2]> = (0..n)
        .map(|i| {
            let iv = &inst.intervals[i];
            [iv.clone(), UncertainInterval::point(values[i].clone(), iv.cost.clone())]
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !dependent(&inst.intervals[i], &inst.intervals[j], &inst.delta) {
                continue;
            }
            let mut t = [[false; 2]; 2];
            for (a, row) in t.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = dependent(&states[i][a], &states[j][b], &inst.delta);
                }
            }
            out.push((i, j, t));
        }
    }
    out
}

/// Enumerates all `2^n` query sets.
pub fn brute_force_optimum(inst: &Instance) -> Result<BruteForce> {
    let n = inst.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge {
            size: n as u128,
            limit: BRUTE_FORCE_MAX_N as u128,
        });
    }
    let values = inst.values()?;
    let tables = pair_tables(inst, values);
    let mut best: Option<Scalar> = None;
    let mut minimizers = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let q = |i: usize| ((mask >> i) & 1) as usize;
        if tables.iter().any(|(i, j, t)| t[q(*i)][q(*j)]) {
            continue;
        }
        let cost = (0..n)
            .filter(|&i| q(i) == 1)
            .fold(Scalar::zero(), |acc, i| acc + &inst.intervals[i].cost);
        let set: BTreeSet<usize> = (0..n).filter(|&i| q(i) == 1).collect();
        match &best {
            Some(b) if &cost > b => {}
            Some(b) if &cost == b => minimizers.push(set),
            _ => {
                best = Some(cost);
                minimizers = vec![set];
            }
        }
    }
    Ok(BruteForce {
        cost: best.expect("querying everything is feasible"),
        minimizers,
    })
}

/// Non-trivial intervals with at least one dependency: the best strategy that never looks at answers.
pub fn oblivious_query_set(inst: &Instance) -> BTreeSet<usize> {
    let g: DependencyGraph = instance_graph(inst);
    (0..inst.len())
        .filter(|&i| !is_trivial(&inst.intervals[i], &inst.delta) && g.degree(i) > 0)
        .collect()
}

/// Optimum of the refinement model: for each interval the number of script steps taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpcpOptimum {
    pub cost: Scalar,
    pub steps: Vec<usize>,
}

/// Enumerates every vector of script prefix lengths.
pub fn cpcp_brute_force_optimum(inst: &Instance) -> Result<CpcpOptimum> {
    let n = inst.len();
    let scripts = (0..n).map(|i| inst.script(i)).collect::<Result<Vec<_>>>()?;
    let size = scripts
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128 + 1))
        .unwrap_or(u128::MAX);
    if size > CPCP_MAX_STATES {
        return Err(Error::TooLarge {
            size,
            limit: CPCP_MAX_STATES,
        });
    }
    // states[i][t] is interval i after t queries; prefix[i][t] the cost of those t queries.
    let states: Vec<Vec<UncertainInterval>> = (0..n)
        .map(|i| {
            let iv = &inst.intervals[i];
            std::iter::once(iv.clone())
                .chain(scripts[i].steps.iter().map(|(lo, hi)| iv_from(lo, hi, &iv.cost)))
                .collect()
        })
        .collect();
    let prefix: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut acc = Scalar::zero();
            let mut out = vec![acc.clone()];
            for t in 1..=scripts[i].len() {
                acc += inst.time_cost(i, t);
                out.push(acc.clone());
            }
            out
        })
        .collect();
    let mut tables = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !dependent(&inst.intervals[i], &inst.intervals[j], &inst.delta) {
                continue;
            }
            let t: Vec<Vec<bool>> = states[i]
                .iter()
                .map(|a| states[j].iter().map(|b| dependent(a, b, &inst.delta)).collect())
                .collect();
            tables.push((i, j, t));
        }
    }
    let mut t = vec![0usize; n];
    let mut best: Option<CpcpOptimum> = None;
    loop {
        if !tables.iter().any(|(i, j, tab)| tab[t[*i]][t[*j]]) {
            let cost = (0..n).fold(Scalar::zero(), |acc, i| acc + &prefix[i][t[i]]);
            if best.as_ref().is_none_or(|b| cost < b.cost) {
                best = Some(CpcpOptimum { cost, steps: t.clone() });
            }
        }
        // Odometer with the last index fastest, so vectors are visited in lexicographic order.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(best.expect("fully refined state is feasible"));
            }
            k -= 1;
            if t[k] < scripts[k].len() {
                t[k] += 1;
                break;
            }
            t[k] = 0;
        }
    }
}

fn iv_from(lo: &Scalar, hi: &Scalar, cost: &Scalar) -> UncertainInterval {
    UncertainInterval {
        lo: lo.clone(),
        hi: hi.clone(),
        cost: cost.clone(),
    }
}
