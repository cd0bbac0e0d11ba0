use super::coin::{Coin, Probability, ProbabilityRule};
use super::env::{Environment, RunReport};
use crate::error::{Error, Result};
use crate::graph::state_graph;
use crate::instance::Instance;
use crate::knowledge::KnowledgeState;
use crate::scalar::format_scalar;

/// Smallest of `candidates` by `(hi, index)`.
pub(crate) fn min_right(state: &KnowledgeState, candidates: impl IntoIterator<Item = usize>) -> Option<usize> {
    candidates
        .into_iter()
        .min_by(|&a, &b| state.current[a].hi.cmp(&state.current[b].hi).then(a.cmp(&b)))
}

/// Queries static and value singleton witnesses until none is left.
fn preprocess(env: &mut Environment) -> Result<()> {
    env.flush_static_witnesses()
}

/// The randomized edge trial followed by the `x, y, z` rule on larger components.
///
/// `rule` must be [`ProbabilityRule::Fixed`]; with `p = 1` the smaller index of a lone edge is
/// queried first, with `p = 0` the larger.
pub fn algorithm1(
    mut env: Environment,
    rule: &ProbabilityRule,
    preprocess_witnesses: bool,
    coin: &mut dyn Coin,
) -> Result<RunReport> {
    let ProbabilityRule::Fixed(p) = rule else {
        return Err(Error::UnsupportedRule(rule.name()));
    };
    let p = Probability::exact(p.clone());
    if preprocess_witnesses {
        preprocess(&mut env)?;
    }
    while env.state.has_dependency() {
        let before = env.state.spent.clone();
        let queries_before = env.state.query_counts.iter().sum::<usize>();
        let g = state_graph(&env.state);
        env.begin_group();
        if let Some(edge) = g.components().into_iter().find(|c| c.len() == 2) {
            let (i, j) = (edge[0], edge[1]);
            let (first, other) = if coin.flip(&p) { (i, j) } else { (j, i) };
            env.query(first)?;
            if env.contains_window_of(other, first) {
                env.query(other)?;
            }
        } else {
            let x = min_right(&env.state, (0..g.n()).filter(|&v| g.degree(v) > 0)).expect("an edge exists");
            let y = min_right(&env.state, g.adj[x].iter().copied()).expect("x has a neighbour");
            let z = if g.degree(x) >= 2 {
                min_right(&env.state, g.adj[x].iter().copied().filter(|&v| v != y))
            } else {
                min_right(&env.state, g.adj[y].iter().copied().filter(|&v| v != x))
            };
            env.query_if_open(y)?;
            let fire = env.contains_window_of(x, y) || z.is_some_and(|z| env.state.is_dependent(x, z));
            if fire {
                env.query_if_open(x)?;
                if let Some(z) = z {
                    env.query_if_open(z)?;
                }
            }
        }
        env.flush_value_witnesses()?;
        if env.state.query_counts.iter().sum::<usize>() == queries_before {
            return Err(Error::InvariantViolation(format!(
                "no progress at cost {}",
                format_scalar(&before)
            )));
        }
    }
    env.finish("alg1")
}

/// Outcome of running only the witness preprocessing on the realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessSummary {
    pub no_two_component: bool,
    /// Size of the smallest component with at least one edge, if any.
    pub min_component_size: Option<usize>,
}

/// Simulates the witness preprocessing and inspects the remaining dependency graph.
pub fn no_2component_after_preprocess(inst: &Instance) -> Result<PreprocessSummary> {
    if !num_traits::Zero::is_zero(&inst.delta) {
        return Err(Error::DeltaNotZero(format_scalar(&inst.delta)));
    }
    let mut env = Environment::exact(inst)?;
    preprocess(&mut env)?;
    let g = state_graph(&env.state);
    let sizes: Vec<usize> = g
        .components()
        .into_iter()
        .map(|c| c.len())
        .filter(|&s| s >= 2)
        .collect();
    Ok(PreprocessSummary {
        no_two_component: !sizes.contains(&2),
        min_component_size: sizes.into_iter().min(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::coin::SeededCoin;
    use crate::scalar::{int, rat};

    fn lone_pair() -> Instance {
        Instance::from_pairs(
            int(0),
            &[(int(0), int(10)), (int(4), int(14))],
            Some(vec![int(7), int(12)]),
        )
        .unwrap()
    }

    #[test]
    fn lone_edge_branches() {
        let mut coin = SeededCoin::new(0);
        let left = algorithm1(
            Environment::exact(&lone_pair()).unwrap(),
            &ProbabilityRule::Fixed(int(1)),
            true,
            &mut coin,
        )
        .unwrap();
        assert_eq!(left.total_cost, int(2));
        let right = algorithm1(
            Environment::exact(&lone_pair()).unwrap(),
            &ProbabilityRule::Fixed(int(0)),
            true,
            &mut coin,
        )
        .unwrap();
        assert_eq!(right.total_cost, int(1));
    }

    #[test]
    fn rejects_cost_rules() {
        let mut coin = SeededCoin::new(0);
        let err = algorithm1(
            Environment::exact(&lone_pair()).unwrap(),
            &ProbabilityRule::Half,
            true,
            &mut coin,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedRule(_)));
    }

    #[test]
    fn preprocess_summary() {
        assert!(!no_2component_after_preprocess(&lone_pair()).unwrap().no_two_component);
        let edgeless = Instance::from_pairs(
            int(0),
            &[(int(0), int(1)), (int(2), int(3))],
            Some(vec![int(0), int(2)]),
        )
        .unwrap();
        let s = no_2component_after_preprocess(&edgeless).unwrap();
        assert!(s.no_two_component);
        assert_eq!(s.min_component_size, None);
        let mut d = lone_pair();
        d.delta = rat(1, 2);
        assert!(no_2component_after_preprocess(&d).is_err());
    }
}
