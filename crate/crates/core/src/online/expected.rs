use super::coin::{Coin, ScriptedCoin};
use crate::error::{Error, Result};
use crate::scalar::{Enclosure, Scalar};

/// Maximum number of leaves expanded by [`expected_cost`].
pub const MAX_BRANCHES: usize = 1 << 20;

/// Exact expectation of a randomized run, by expanding both outcomes of every trial.
///
/// `run` is replayed with a scripted coin; the result is exact for rational probabilities and a
/// tight enclosure when `sqrt(3)` is involved.
pub fn expected_cost<F>(mut run: F) -> Result<Enclosure>
where
    F: FnMut(&mut dyn Coin) -> Result<Scalar>,
{
    let mut total = Enclosure::exact(Scalar::from_integer(0.into()));
    let mut pending: Vec<Vec<bool>> = vec![Vec::new()];
    let mut leaves = 0usize;
    while let Some(prefix) = pending.pop() {
        leaves += 1;
        if leaves > MAX_BRANCHES {
            return Err(Error::TooManyBranches(MAX_BRANCHES));
        }
        let fixed = prefix.len();
        let mut coin = ScriptedCoin::new(prefix);
        let cost = run(&mut coin)?;
        let mut prob = Enclosure::exact(Scalar::from_integer(1.into()));
        for (p, outcome) in &coin.trials {
            let e = p.enclosure();
            prob = prob.mul_nonneg(&if *outcome { e } else { e.complement() });
        }
        total = total.add(&prob.scale(&cost));
        // Trials past the replayed prefix defaulted to `true`; schedule their other branch.
        let outcomes: Vec<bool> = coin.trials.iter().map(|(_, o)| *o).collect();
        for k in fixed..outcomes.len() {
            let mut alt = outcomes[..k].to_vec();
            alt.push(false);
            pending.push(alt);
        }
    }
    Ok(total)
}
