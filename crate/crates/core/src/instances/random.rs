use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, RefinementScript};
use crate::interval::UncertainInterval;
use crate::scalar::{int, rat, Scalar};

/// Grid step for random endpoints; coarse enough that ties at endpoints are common.
const GRID_DENOM: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostModel {
    /// Every query costs 1.
    Uniform,
    /// Costs drawn from `{1/4, 2/4, ..., 4}`.
    RationalRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueModel {
    UniformInInterval,
    /// `lo` and `hi` each with probability 1/4, otherwise uniform on the grid.
    EndpointBiased,
}

impl CostModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(CostModel::Uniform),
            "rational-range" | "arbitrary" => Ok(CostModel::RationalRange),
            other => Err(Error::InvalidParameters(format!("unknown cost model {other:?}"))),
        }
    }
}

impl ValueModel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform-in-interval" | "uniform" => Ok(ValueModel::UniformInInterval),
            "endpoint-biased" => Ok(ValueModel::EndpointBiased),
            other => Err(Error::InvalidParameters(format!("unknown value model {other:?}"))),
        }
    }
}

fn grid_point(rng: &mut ChaCha8Rng, lo: &Scalar, hi: &Scalar) -> Scalar {
    let steps = ((hi - lo) * int(GRID_DENOM)).to_integer();
    let steps: i64 = steps.try_into().unwrap_or(i64::MAX);
    lo + rat(rng.gen_range(0..=steps), GRID_DENOM)
}

fn draw_value(rng: &mut ChaCha8Rng, iv: &UncertainInterval, model: ValueModel) -> Scalar {
    if model == ValueModel::EndpointBiased {
        match rng.gen_range(0..4) {
            0 => return iv.lo.clone(),
            1 => return iv.hi.clone(),
            _ => {}
        }
    }
    grid_point(rng, &iv.lo, &iv.hi)
}

fn draw_cost(rng: &mut ChaCha8Rng, model: CostModel) -> Scalar {
    match model {
        CostModel::Uniform => int(1),
        CostModel::RationalRange => rat(rng.gen_range(1..=16), 4),
    }
}

fn draw_intervals(rng: &mut ChaCha8Rng, n: usize, cost_model: CostModel) -> Vec<UncertainInterval> {
    // The span grows with n so that the graph neither saturates nor falls apart.
    let span = 4 * n as i64 + 4;
    (0..n)
        .map(|_| {
            let a = rat(rng.gen_range(0..=span * GRID_DENOM), GRID_DENOM);
            let width = rat(rng.gen_range(0..=(span / 2).max(2) * GRID_DENOM), GRID_DENOM);
            let hi = &a + width;
            UncertainInterval {
                lo: a,
                hi,
                cost: draw_cost(rng, cost_model),
            }
        })
        .collect()
}

/// Random instance with a realization; deterministic in `seed`.
pub fn gen_random(
    seed: u64,
    n: usize,
    delta: Scalar,
    cost_model: CostModel,
    value_model: ValueModel,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let intervals = draw_intervals(&mut rng, n, cost_model);
    let values = intervals
        .iter()
        .map(|iv| draw_value(&mut rng, iv, value_model))
        .collect();
    Instance::with_values(delta, intervals, values)
}

/// Random instance for the refinement model: every interval gets a nested script of
/// `1..=max_steps` steps, and with probability 1/2 the instance carries time-dependent costs.
pub fn gen_random_scripted(seed: u64, n: usize, max_steps: usize) -> Result<Instance> {
    if n == 0 || max_steps == 0 {
        return Err(Error::InvalidParameters("n and max_steps must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let intervals = draw_intervals(&mut rng, n, CostModel::Uniform);
    let mut values = Vec::with_capacity(n);
    let mut scripts = Vec::with_capacity(n);
    for iv in &intervals {
        let v = draw_value(&mut rng, iv, ValueModel::EndpointBiased);
        let len = rng.gen_range(1..=max_steps);
        let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
        let mut steps = Vec::with_capacity(len);
        for _ in 1..len {
            // Shrink each side towards v by a random quarter; zero keeps the interval unchanged.
            lo = &lo + (&v - &lo) * rat(rng.gen_range(0..=4), 4);
            hi = &hi - (&hi - &v) * rat(rng.gen_range(0..=4), 4);
            steps.push((lo.clone(), hi.clone()));
        }
        steps.push((v.clone(), v.clone()));
        values.push(v);
        scripts.push(RefinementScript::new(steps));
    }
    let time_costs = if rng.gen_bool(0.5) {
        Some(
            scripts
                .iter()
                .map(|s| (0..s.len()).map(|_| rat(rng.gen_range(0..=8), 4)).collect())
                .collect(),
        )
    } else {
        None
    };
    let inst = Instance {
        delta: Scalar::from_integer(0.into()),
        intervals,
        values: Some(values),
        refinements: Some(scripts),
        time_costs,
    };
    inst.validate()?;
    Ok(inst)
}

/// Random laminar family: pairs are nested or disjoint, and no two intervals share an endpoint.
///
/// Each interval's parent is drawn among the earlier ones of depth below `depth`, so the
/// nesting forest has height at most `depth`.
pub fn gen_laminar(seed: u64, n: usize, depth: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut level: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let candidates: Vec<usize> = (0..i).filter(|&j| level[j] + 1 < depth.max(1)).collect();
        let p = if candidates.is_empty() || rng.gen_bool(0.3) {
            None
        } else {
            Some(candidates[rng.gen_range(0..candidates.len())])
        };
        level.push(p.map_or(0, |p| level[p] + 1));
        parent.push(p);
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(i),
            None => roots.push(i),
        }
    }
    let mut coords = vec![(0i64, 0i64); n];
    let mut pos = 0i64;
    fn place(v: usize, children: &[Vec<usize>], coords: &mut [(i64, i64)], pos: &mut i64, rng: &mut ChaCha8Rng) {
        let lo = *pos;
        *pos += 1 + rng.gen_range(0..3);
        for &c in &children[v] {
            place(c, children, coords, pos, rng);
            *pos += 1 + rng.gen_range(0..2);
        }
        coords[v] = (lo, *pos);
        *pos += 1 + rng.gen_range(0..3);
    }
    for &r in &roots {
        place(r, &children, &mut coords, &mut pos, &mut rng);
    }
    let intervals: Vec<UncertainInterval> = coords
        .iter()
        .map(|&(lo, hi)| UncertainInterval {
            lo: int(lo),
            hi: int(hi),
            cost: int(1),
        })
        .collect();
    let values = intervals
        .iter()
        .map(|iv| draw_value(&mut rng, iv, ValueModel::EndpointBiased))
        .collect();
    Instance::with_values(int(0), intervals, values)
}
