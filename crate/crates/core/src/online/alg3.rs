use num_traits::Zero;

use super::env::{Environment, RunReport};
use crate::error::Result;
use crate::scalar::Scalar;

/// Local-ratio algorithm for queries that return refined intervals, with time-dependent costs.
///
/// `residual[i]` tracks what is left of the cost of the next query on `i`; it is reset to the
/// following step's cost after each query.
pub fn algorithm3_cpcp(mut env: Environment) -> Result<RunReport> {
    let n = env.n();
    let mut residual: Vec<Scalar> = (0..n).map(|i| env.next_cost(i)).collect();
    flush(&mut env, &mut residual)?;
    while env.state.has_dependency() {
        env.begin_group();
        let free = (0..n).find(|&i| residual[i].is_zero() && !env.is_exhausted(i) && env.state.has_neighbor(i));
        if let Some(i) = free {
            env.query(i)?;
            residual[i] = env.next_cost(i);
        } else {
            let (i, j) = env.state.first_dependent_pair().expect("dependency exists");
            let w = residual[i].clone().min(residual[j].clone());
            residual[i] -= &w;
            residual[j] -= &w;
        }
        flush(&mut env, &mut residual)?;
    }
    env.finish("alg3")
}

fn flush(env: &mut Environment, residual: &mut [Scalar]) -> Result<()> {
    loop {
        let found = {
            let me = &*env;
            me.state.static_witness(|i| !me.is_exhausted(i))
        };
        let Some(i) = found else {
            return Ok(());
        };
        env.begin_group();
        env.query(i)?;
        residual[i] = env.next_cost(i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, RefinementScript};
    use crate::scalar::{int, rat};

    #[test]
    fn exact_embedding_of_three_intervals() {
        let inst = Instance::from_pairs(
            int(0),
            &[(int(2), int(7)), (int(0), int(4)), (int(5), int(9))],
            Some(vec![rat(11, 2), int(3), rat(33, 5)]),
        )
        .unwrap();
        let r = algorithm3_cpcp(Environment::refinement(&inst).unwrap()).unwrap();
        assert!(r.total_cost <= int(4));
    }

    #[test]
    fn free_first_steps() {
        let mut inst = Instance::from_pairs(
            int(0),
            &[(int(0), int(10)), (int(4), int(14))],
            Some(vec![int(7), int(12)]),
        )
        .unwrap();
        inst.refinements = Some(vec![
            RefinementScript::new(vec![(int(1), int(9)), (int(7), int(7))]),
            RefinementScript::new(vec![(int(11), int(13)), (int(12), int(12))]),
        ]);
        inst.time_costs = Some(vec![vec![int(0), int(1)], vec![int(0), int(1)]]);
        let r = algorithm3_cpcp(Environment::refinement(&inst).unwrap()).unwrap();
        assert_eq!(r.transcript[0].cost, int(0));
        // [1, 9] and [4, 14] stay dependent until the free step on the second interval.
        assert_eq!(r.total_cost, int(0));
    }
}
