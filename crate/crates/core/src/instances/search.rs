use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interval::UncertainInterval;
use crate::offline::{cpcp_brute_force_optimum, optimum_query_set, query_set_cost};
use crate::online::Algorithm;
use crate::scalar::{int, Enclosure, Scalar};

/// Largest number of assignments [`adversarial_search`] will try.
pub const MAX_ASSIGNMENTS: u128 = 1_000_000;

/// Both endpoints of `iv` and `parts - 1` evenly spaced interior points.
pub fn value_grid(iv: &UncertainInterval, parts: usize) -> Vec<Scalar> {
    if iv.is_point() || parts == 0 {
        return vec![iv.lo.clone()];
    }
    let step = iv.width() / int(parts as i64);
    (0..=parts).map(|t| &iv.lo + &step * int(t as i64)).collect()
}

/// Offline optimum cost in the model `alg` runs in.
pub fn optimum_cost(alg: &Algorithm, inst: &Instance) -> Result<Scalar> {
    if matches!(alg, Algorithm::Alg3) {
        Ok(cpcp_brute_force_optimum(inst)?.cost)
    } else {
        Ok(query_set_cost(inst, &optimum_query_set(inst)?))
    }
}

/// Expected cost of `alg` divided by the optimum. `None` if the optimum is free but the
/// algorithm is not; a free run against a free optimum counts as ratio 1.
pub fn competitive_ratio(alg: &Algorithm, inst: &Instance) -> Result<Option<Enclosure>> {
    let cost = alg.expected_cost(inst)?;
    let opt = optimum_cost(alg, inst)?;
    if opt.is_zero() {
        return Ok(cost.hi.is_zero().then(|| Enclosure::exact(int(1))));
    }
    Ok(Some(cost.div_positive(&opt)))
}

/// The best assignment found and its score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub values: Vec<Scalar>,
    pub score: Scalar,
}

/// Tries every realization drawn from `grids` (one candidate list per interval) and keeps the
/// first one with the highest score. Assignments `score` rejects with an error are skipped.
pub fn adversarial_search<F>(inst: &Instance, grids: &[Vec<Scalar>], mut score: F) -> Result<Option<SearchHit>>
where
    F: FnMut(&Instance) -> Result<Scalar>,
{
    if grids.len() != inst.len() || grids.iter().any(|g| g.is_empty()) {
        return Err(Error::InvalidParameters(
            "one non-empty candidate list per interval required".into(),
        ));
    }
    let total = grids.iter().try_fold(1u128, |acc, g| acc.checked_mul(g.len() as u128));
    match total {
        Some(t) if t <= MAX_ASSIGNMENTS => {}
        _ => {
            return Err(Error::TooLarge {
                size: total.unwrap_or(u128::MAX),
                limit: MAX_ASSIGNMENTS,
            })
        }
    }
    let mut digits = vec![0usize; grids.len()];
    let mut best: Option<SearchHit> = None;
    loop {
        let values: Vec<Scalar> = digits.iter().zip(grids).map(|(&d, g)| g[d].clone()).collect();
        let mut candidate = inst.clone();
        candidate.values = Some(values.clone());
        candidate.refinements = None;
        if candidate.validate().is_ok() {
            if let Ok(s) = score(&candidate) {
                if best.as_ref().is_none_or(|b| s > b.score) {
                    best = Some(SearchHit { values, score: s });
                }
            }
        }
        let mut pos = grids.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < grids[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
