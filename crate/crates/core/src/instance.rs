use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{check_delta, is_trivial, UncertainInterval};
use crate::scalar::{format_scalar, int, Scalar};

/// Successive answers returned by repeated queries on one interval.
///
/// Each step is contained in its predecessor (the first in the original interval) and the last
/// step is a point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RefinementScript {
    pub steps: Vec<(Scalar, Scalar)>,
}

impl RefinementScript {
    pub fn new(steps: Vec<(Scalar, Scalar)>) -> Self {
        Self { steps }
    }

    /// A one-step script that resolves straight to the point `value`.
    pub fn exact(value: Scalar) -> Self {
        Self {
            steps: vec![(value.clone(), value)],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_point(&self) -> Option<&Scalar> {
        self.steps.last().filter(|(lo, hi)| lo == hi).map(|(lo, _)| lo)
    }
}

/// Threshold, intervals and (optionally) the hidden realization and CP-CP extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub delta: Scalar,
    pub intervals: Vec<UncertainInterval>,
    pub values: Option<Vec<Scalar>>,
    pub refinements: Option<Vec<RefinementScript>>,
    pub time_costs: Option<Vec<Vec<Scalar>>>,
}

impl Instance {
    pub fn new(delta: Scalar, intervals: Vec<UncertainInterval>) -> Result<Self> {
        let inst = Self {
            delta,
            intervals,
            values: None,
            refinements: None,
            time_costs: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_values(delta: Scalar, intervals: Vec<UncertainInterval>, values: Vec<Scalar>) -> Result<Self> {
        let inst = Self {
            delta,
            intervals,
            values: Some(values),
            refinements: None,
            time_costs: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance from `(lo, hi)` pairs with unit costs.
    pub fn from_pairs(delta: Scalar, pairs: &[(Scalar, Scalar)], values: Option<Vec<Scalar>>) -> Result<Self> {
        let intervals = pairs
            .iter()
            .map(|(lo, hi)| UncertainInterval::new(lo.clone(), hi.clone(), int(1)))
            .collect::<Result<Vec<_>>>()?;
        let inst = Self {
            delta,
            intervals,
            values,
            refinements: None,
            time_costs: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn costs(&self) -> Vec<Scalar> {
        self.intervals.iter().map(|iv| iv.cost.clone()).collect()
    }

    pub fn values(&self) -> Result<&[Scalar]> {
        self.values.as_deref().ok_or(Error::MissingRealization)
    }

    pub fn has_uniform_costs(&self) -> bool {
        self.intervals.windows(2).all(|w| w[0].cost == w[1].cost)
    }

    /// Cost of the `t`-th query (1-based) on interval `i`.
    ///
    /// Without a cost sequence every query costs the interval's cost; past the end of a
    /// sequence its last entry repeats.
    pub fn time_cost(&self, i: usize, t: usize) -> Scalar {
        debug_assert!(t >= 1);
        match self.time_costs.as_ref().map(|tc| &tc[i]) {
            Some(seq) if !seq.is_empty() => seq[(t - 1).min(seq.len() - 1)].clone(),
            _ => self.intervals[i].cost.clone(),
        }
    }

    /// The refinement script of `i`, defaulting to a single step to the realized point.
    pub fn script(&self, i: usize) -> Result<RefinementScript> {
        if let Some(script) = self.refinements.as_ref().map(|r| &r[i]).filter(|s| !s.is_empty()) {
            return Ok(script.clone());
        }
        let values = self.values()?;
        Ok(RefinementScript::exact(values[i].clone()))
    }

    pub fn validate(&self) -> Result<()> {
        check_delta(&self.delta)?;
        let n = self.intervals.len();
        for iv in &self.intervals {
            if iv.lo > iv.hi || iv.cost.is_negative() {
                return Err(Error::InvalidInterval {
                    lo: format_scalar(&iv.lo),
                    hi: format_scalar(&iv.hi),
                    cost: format_scalar(&iv.cost),
                });
            }
        }
        if let Some(values) = &self.values {
            if values.len() != n {
                return Err(violation(format!("{} values for {n} intervals", values.len())));
            }
            for (i, (v, iv)) in values.iter().zip(&self.intervals).enumerate() {
                if !iv.contains_value(v) {
                    return Err(violation(format!(
                        "value {} of interval {i} lies outside [{}, {}]",
                        format_scalar(v),
                        format_scalar(&iv.lo),
                        format_scalar(&iv.hi)
                    )));
                }
            }
        }
        if let Some(scripts) = &self.refinements {
            if scripts.len() != n {
                return Err(violation(format!(
                    "{} refinement scripts for {n} intervals",
                    scripts.len()
                )));
            }
            for (i, script) in scripts.iter().enumerate() {
                self.validate_script(i, script)?;
            }
        }
        if let Some(costs) = &self.time_costs {
            if costs.len() != n {
                return Err(violation(format!("{} cost sequences for {n} intervals", costs.len())));
            }
            if costs.iter().flatten().any(|c| c.is_negative()) {
                return Err(violation("negative time-indexed cost".into()));
            }
        }
        Ok(())
    }

    fn validate_script(&self, i: usize, script: &RefinementScript) -> Result<()> {
        if script.is_empty() {
            return Ok(());
        }
        let (mut lo, mut hi) = (&self.intervals[i].lo, &self.intervals[i].hi);
        for (t, (slo, shi)) in script.steps.iter().enumerate() {
            if slo > shi || slo < lo || shi > hi {
                return Err(violation(format!("refinement step {t} of interval {i} is not nested")));
            }
            lo = slo;
            hi = shi;
        }
        let last = script
            .final_point()
            .ok_or_else(|| violation(format!("refinement script of interval {i} does not end in a point")))?;
        if let Some(values) = &self.values {
            if &values[i] != last {
                return Err(violation(format!(
                    "refinement script of interval {i} ends at {} but the value is {}",
                    format_scalar(last),
                    format_scalar(&values[i])
                )));
            }
        }
        Ok(())
    }

    /// Replaces every interval by `[lo + delta/2, hi - delta/2]` and sets `delta = 0`.
    ///
    /// The dependency graph is unchanged. Realization values and scripts are dropped since
    /// they may fall outside the shrunk intervals.
    pub fn shrink_delta(&self) -> Result<Instance> {
        if let Some(i) = self.intervals.iter().position(|iv| is_trivial(iv, &self.delta)) {
            return Err(Error::TrivialInterval(i));
        }
        let half = &self.delta / int(2);
        let intervals = self
            .intervals
            .iter()
            .map(|iv| UncertainInterval {
                lo: &iv.lo + &half,
                hi: &iv.hi - &half,
                cost: iv.cost.clone(),
            })
            .collect();
        Ok(Instance {
            delta: Scalar::zero(),
            intervals,
            values: None,
            refinements: None,
            time_costs: self.time_costs.clone(),
        })
    }
}

fn violation(message: String) -> Error {
    Error::InvariantViolation(message)
}
