use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use super::env::{Environment, RunReport};
use crate::error::{Error, Result};
use crate::graph::{min_cost_vertex_cover_in_order, peo_min_right, state_graph};
use crate::interval::is_trivial;
use crate::offline::oblivious_query_set;
use crate::permutation::Permutation;
use crate::scalar::format_scalar;

/// Queries every non-trivial interval that has a dependency, without looking at answers.
pub fn run_oblivious(mut env: Environment) -> Result<RunReport> {
    for i in oblivious_query_set(env.instance()) {
        env.begin_group();
        env.query(i)?;
    }
    env.finish("oblivious")
}

/// While some pair is dependent, queries its open members. Pairs are scanned in index order.
pub fn simple_adaptive(mut env: Environment) -> Result<RunReport> {
    while let Some((i, j)) = env.state.first_dependent_pair() {
        env.begin_group();
        let a = env.query_if_open(i)?;
        let b = env.query_if_open(j)?;
        if !a && !b {
            return Err(Error::InvariantViolation(format!(
                "pair ({i}, {j}) is dependent but fully queried"
            )));
        }
    }
    env.finish("simple")
}

/// Merge sort whose comparator queries both open members of a dependent pair.
pub fn simple_adaptive_stable_sort(mut env: Environment) -> Result<RunReport> {
    if !env.delta().is_zero() {
        return Err(Error::DeltaNotZero(format_scalar(env.delta())));
    }
    if !env.instance().has_uniform_costs() {
        return Err(Error::NonUniformCosts);
    }
    let mut order: Vec<usize> = (0..env.n()).collect();
    merge_sort(&mut order, &mut env)?;
    Ok(env.finish_with("stable-sort", Permutation::new(order)))
}

fn compare(env: &mut Environment, a: usize, b: usize) -> Result<Ordering> {
    if env.state.is_dependent(a, b) {
        env.begin_group();
        env.query_if_open(a)?;
        env.query_if_open(b)?;
    }
    let (x, y) = (&env.state.current[a], &env.state.current[b]);
    Ok(x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)).then(a.cmp(&b)))
}

fn merge_sort(items: &mut [usize], env: &mut Environment) -> Result<()> {
    if items.len() <= 1 {
        return Ok(());
    }
    let mid = items.len() / 2;
    merge_sort(&mut items[..mid], env)?;
    merge_sort(&mut items[mid..], env)?;
    let mut merged = Vec::with_capacity(items.len());
    let (mut i, mut j) = (0, mid);
    while i < mid && j < items.len() {
        // Ties keep the left run first.
        if compare(env, items[j], items[i])? == Ordering::Less {
            merged.push(items[j]);
            j += 1;
        } else {
            merged.push(items[i]);
            i += 1;
        }
    }
    merged.extend_from_slice(&items[i..mid]);
    merged.extend_from_slice(&items[j..]);
    items.copy_from_slice(&merged);
    Ok(())
}

/// Queries a minimum-cost vertex cover, then every non-trivial interval that is still dependent.
pub fn vc_adaptive(mut env: Environment) -> Result<RunReport> {
    let g = state_graph(&env.state);
    let order = peo_min_right(&g, &env.state.current)?;
    let cover = min_cost_vertex_cover_in_order(&g, &order)?;
    for &i in &cover {
        env.begin_group();
        env.query(i)?;
    }
    let delta = env.delta().clone();
    let second: BTreeSet<usize> = (0..env.n())
        .filter(|&i| {
            !env.state.is_queried(i) && !is_trivial(&env.state.current[i], &delta) && env.state.has_neighbor(i)
        })
        .collect();
    for i in second {
        env.begin_group();
        env.query(i)?;
    }
    env.finish("vc")
}
