use std::collections::BTreeSet;

use num_traits::Zero;

use super::alg1::min_right;
use super::env::{AdviceUsage, Environment, RunReport};
use crate::error::{Error, Result};
use crate::graph::state_graph;
use crate::instance::Instance;
use crate::offline::brute_force_optimum;
use crate::scalar::format_scalar;

/// Answers questions about one fixed optimum query set.
#[derive(Debug, Clone)]
pub struct AdviceOracle {
    optimum: BTreeSet<usize>,
    usage: AdviceUsage,
}

impl AdviceOracle {
    pub fn new(optimum: BTreeSet<usize>) -> Self {
        Self {
            optimum,
            usage: AdviceUsage::default(),
        }
    }

    /// Fixes the lexicographically smallest optimum found by exhaustive search.
    pub fn from_brute_force(inst: &Instance) -> Result<Self> {
        Ok(Self::new(brute_force_optimum(inst)?.canonical().clone()))
    }

    pub fn optimum(&self) -> &BTreeSet<usize> {
        &self.optimum
    }

    /// One bit: is `j` in the optimum?
    pub fn contains(&mut self, j: usize) -> bool {
        self.usage.question_sizes.push(2);
        self.optimum.contains(&j)
    }

    /// The smallest member of `clique` outside the optimum, or `fallback` if there is none.
    pub fn pick_outside(&mut self, clique: &[usize], fallback: usize) -> usize {
        self.usage.question_sizes.push(clique.len());
        clique
            .iter()
            .copied()
            .find(|v| !self.optimum.contains(v))
            .unwrap_or(fallback)
    }

    pub fn usage(&self) -> &AdviceUsage {
        &self.usage
    }
}

/// One bit per step decides at least two intervals. Requires `delta = 0`.
pub fn advice_half(mut env: Environment, oracle: &mut AdviceOracle) -> Result<RunReport> {
    if !env.delta().is_zero() {
        return Err(Error::DeltaNotZero(format_scalar(env.delta())));
    }
    while env.state.has_dependency() {
        let g = state_graph(&env.state);
        let cur = &env.state.current;
        let j = if let Some((a, b, c)) = g.find_triangle() {
            let tri = [a, b, c];
            let i = tri
                .into_iter()
                .min_by(|&u, &v| cur[u].lo.cmp(&cur[v].lo).then(u.cmp(&v)))
                .expect("triangle");
            let k = tri
                .into_iter()
                .filter(|&v| v != i)
                .max_by(|&u, &v| cur[u].hi.cmp(&cur[v].hi).then(v.cmp(&u)))
                .expect("triangle");
            tri.into_iter().find(|&v| v != i && v != k).expect("third vertex")
        } else {
            let leaf = (0..g.n())
                .find(|&v| g.degree(v) == 1)
                .ok_or_else(|| Error::InvariantViolation("triangle-free graph without a leaf".into()))?;
            *g.adj[leaf].iter().next().expect("leaf has a neighbour")
        };
        env.begin_group();
        if oracle.contains(j) {
            env.query(j)?;
        } else {
            for &z in &g.adj[j] {
                env.query_if_open(z)?;
            }
        }
        env.flush_value_witnesses()?;
    }
    let mut report = env.finish("advice-half")?;
    report.advice = Some(oracle.usage().clone());
    Ok(report)
}

/// Asks for a member of the clique around the leftmost-ending dependent interval that the
/// optimum skips, and queries the rest of the clique.
pub fn advice_lg3(mut env: Environment, oracle: &mut AdviceOracle) -> Result<RunReport> {
    while env.state.has_dependency() {
        let g = state_graph(&env.state);
        let x = min_right(&env.state, (0..g.n()).filter(|&v| g.degree(v) > 0)).expect("an edge exists");
        let mut clique: Vec<usize> = g.adj[x].iter().copied().collect();
        clique.push(x);
        clique.sort_unstable();
        let y = oracle.pick_outside(&clique, x);
        env.begin_group();
        for &z in clique.iter().filter(|&&z| z != y) {
            env.query_if_open(z)?;
        }
        env.flush_value_witnesses()?;
    }
    let mut report = env.finish("advice-lg3")?;
    report.advice = Some(oracle.usage().clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn single_edge_uses_one_bit() {
        let inst = Instance::from_pairs(
            int(0),
            &[(int(0), int(10)), (int(4), int(14))],
            Some(vec![int(7), int(12)]),
        )
        .unwrap();
        let mut oracle = AdviceOracle::from_brute_force(&inst).unwrap();
        let r = advice_lg3(Environment::exact(&inst).unwrap(), &mut oracle).unwrap();
        assert_eq!(r.total_cost, int(1));
        assert_eq!(r.advice_bits(), Some(1));
        let mut oracle = AdviceOracle::from_brute_force(&inst).unwrap();
        let r = advice_half(Environment::exact(&inst).unwrap(), &mut oracle).unwrap();
        assert_eq!(r.total_cost, int(1));
        assert_eq!(r.advice_bits(), Some(1));
    }

    #[test]
    fn edgeless_needs_nothing() {
        let inst = Instance::from_pairs(
            int(0),
            &[(int(0), int(1)), (int(2), int(3))],
            Some(vec![int(0), int(3)]),
        )
        .unwrap();
        let mut oracle = AdviceOracle::from_brute_force(&inst).unwrap();
        let r = advice_half(Environment::exact(&inst).unwrap(), &mut oracle).unwrap();
        assert_eq!((r.total_cost.clone(), r.advice_bits()), (int(0), Some(0)));
    }
}
