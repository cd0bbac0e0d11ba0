use num_traits::Zero;

use super::coin::{Coin, ProbabilityRule};
use super::env::{Environment, RunReport};
use crate::error::{Error, Result};
use crate::graph::{longest_path_caterpillar, state_graph, DependencyGraph};
use crate::scalar::Scalar;

/// The trial chosen on a forest component: query `centre` or all of `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Trial {
    centre: usize,
    side: Vec<usize>,
}

/// Longest paths, fixed once per component the first time the graph is triangle-free.
#[derive(Debug, Default)]
struct FrozenPaths {
    paths: Vec<Vec<usize>>,
    initialised: bool,
}

impl FrozenPaths {
    fn freeze_components(&mut self, g: &DependencyGraph, env: &Environment, only_uncovered: bool) -> Result<()> {
        for comp in g.components().into_iter().filter(|c| c.len() >= 2) {
            if only_uncovered && self.paths.iter().any(|p| p.iter().any(|v| comp.contains(v))) {
                continue;
            }
            self.paths.push(longest_path_caterpillar(g, &comp, &env.state.current)?);
        }
        self.initialised = true;
        Ok(())
    }

    fn trial(&mut self, g: &DependencyGraph, env: &Environment) -> Result<Trial> {
        if !self.initialised {
            self.freeze_components(g, env, false)?;
        }
        let active = |v: usize| g.degree(v) > 0;
        if !self.paths.iter().flatten().any(|&v| active(v)) {
            self.freeze_components(g, env, true)?;
        }
        let path = self
            .paths
            .iter()
            .find(|p| p.iter().any(|&v| active(v)))
            .ok_or_else(|| Error::InvariantViolation("no active vertex on any frozen path".into()))?;
        let start = path.iter().position(|&v| active(v)).expect("active vertex");
        let mut end = start;
        while end + 1 < path.len() && g.has_edge(path[end], path[end + 1]) {
            end += 1;
        }
        let run = &path[start..=end];
        let r1 = run[0];
        let component = g
            .components()
            .into_iter()
            .find(|c| c.contains(&r1))
            .expect("r1 has a component");
        if component.len() == 2 {
            // A lone edge: the trial centre is the right-hand interval.
            let other = *g.adj[r1].iter().next().expect("edge");
            let key = |v: usize| (&env.state.current[v].lo, v);
            let (left, right) = if key(r1) < key(other) { (r1, other) } else { (other, r1) };
            return Ok(Trial {
                centre: right,
                side: vec![left],
            });
        }
        let has_legs = g.adj[r1].iter().any(|&u| run.get(1) != Some(&u));
        let (centre, next) = if has_legs || run.len() == 1 {
            (r1, run.get(1).copied())
        } else {
            (run[1], run.get(2).copied())
        };
        let side = g.adj[centre].iter().copied().filter(|&u| Some(u) != next).collect();
        Ok(Trial { centre, side })
    }
}

/// Local-ratio triangle elimination followed by randomized trials along frozen longest paths.
///
/// Residual weights drive the decisions; the environment always charges original costs.
pub fn algorithm2(mut env: Environment, rule: &ProbabilityRule, coin: &mut dyn Coin) -> Result<RunReport> {
    if matches!(rule, ProbabilityRule::Fixed(_)) {
        return Err(Error::UnsupportedRule(rule.name()));
    }
    let n = env.n();
    let mut residual: Vec<Scalar> = (0..n).map(|i| env.cost(i).clone()).collect();
    let mut frozen = FrozenPaths::default();
    while env.state.has_dependency() {
        let g = state_graph(&env.state);
        env.begin_group();
        if let Some(i) = (0..n).find(|&i| residual[i].is_zero() && g.degree(i) > 0) {
            env.query(i)?;
        } else if let Some((a, b, c)) = g.find_triangle() {
            let m = [a, b, c]
                .into_iter()
                .min_by(|&u, &v| residual[u].cmp(&residual[v]).then(u.cmp(&v)))
                .expect("three vertices");
            let w = residual[m].clone();
            for v in [a, b, c] {
                residual[v] -= &w;
            }
            continue;
        } else {
            let trial = frozen.trial(&g, &env)?;
            let side_weight = trial.side.iter().fold(Scalar::zero(), |acc, &u| acc + &residual[u]);
            let p = rule.probability(&side_weight, &residual[trial.centre]);
            if coin.flip(&p) {
                env.query(trial.centre)?;
            } else {
                for u in trial.side {
                    env.query_if_open(u)?;
                }
            }
        }
        env.flush_value_witnesses()?;
    }
    env.finish("alg2")
}
