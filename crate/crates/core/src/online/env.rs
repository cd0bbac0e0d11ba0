use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::instance::{Instance, RefinementScript};
use crate::interval::singleton_witness_value;
use crate::knowledge::KnowledgeState;
use crate::permutation::{build_permutation, Permutation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// A query reveals the exact value; repeats are rejected.
    Exact,
    /// The `t`-th query returns the `t`-th refinement step.
    Refinement,
}

/// One answered query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRecord {
    pub index: usize,
    /// 1-based count of queries on `index` so far, this one included.
    pub step: usize,
    pub lo: Scalar,
    pub hi: Scalar,
    pub cost: Scalar,
}

/// Hidden instance plus the evolving knowledge of the algorithm running against it.
#[derive(Debug, Clone)]
pub struct Environment {
    inst: Instance,
    model: Model,
    scripts: Vec<RefinementScript>,
    pub state: KnowledgeState,
    transcript: Vec<QueryRecord>,
    groups: Vec<Vec<usize>>,
}

impl Environment {
    pub fn exact(inst: &Instance) -> Result<Self> {
        inst.values()?;
        Ok(Self::build(inst, Model::Exact, Vec::new()))
    }

    pub fn refinement(inst: &Instance) -> Result<Self> {
        let scripts = (0..inst.len()).map(|i| inst.script(i)).collect::<Result<Vec<_>>>()?;
        Ok(Self::build(inst, Model::Refinement, scripts))
    }

    fn build(inst: &Instance, model: Model, scripts: Vec<RefinementScript>) -> Self {
        Self {
            inst: inst.clone(),
            model,
            scripts,
            state: KnowledgeState::new(inst),
            transcript: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn n(&self) -> usize {
        self.state.len()
    }

    pub fn delta(&self) -> &Scalar {
        &self.state.delta
    }

    pub fn cost(&self, i: usize) -> &Scalar {
        &self.inst.intervals[i].cost
    }

    /// Cost the next query on `i` would be charged.
    pub fn next_cost(&self, i: usize) -> Scalar {
        match self.model {
            Model::Exact => self.inst.intervals[i].cost.clone(),
            Model::Refinement => self.inst.time_cost(i, self.state.query_counts[i] + 1),
        }
    }

    pub fn is_exhausted(&self, i: usize) -> bool {
        match self.model {
            Model::Exact => self.state.is_queried(i),
            Model::Refinement => self.state.query_counts[i] >= self.scripts[i].len(),
        }
    }

    /// Starts a new group of queries (one algorithm step) in the transcript partition.
    pub fn begin_group(&mut self) {
        if self.groups.last().is_none_or(|g| !g.is_empty()) {
            self.groups.push(Vec::new());
        }
    }

    pub fn query(&mut self, i: usize) -> Result<()> {
        let step = self.state.query_counts[i] + 1;
        let (lo, hi) = match self.model {
            Model::Exact => {
                if self.state.is_queried(i) {
                    return Err(Error::AlreadyQueried(i));
                }
                let v = self.inst.values()?[i].clone();
                (v.clone(), v)
            }
            Model::Refinement => self.scripts[i]
                .steps
                .get(step - 1)
                .cloned()
                .ok_or(Error::ScriptExhausted(i))?,
        };
        let cost = self.next_cost(i);
        self.state.refine(i, lo.clone(), hi.clone(), &cost);
        self.transcript.push(QueryRecord {
            index: i,
            step,
            lo,
            hi,
            cost,
        });
        match self.groups.last_mut() {
            Some(g) => g.push(i),
            None => self.groups.push(vec![i]),
        }
        Ok(())
    }

    /// Queries `i` unless it is already resolved.
    pub fn query_if_open(&mut self, i: usize) -> Result<bool> {
        if self.is_exhausted(i) {
            return Ok(false);
        }
        self.query(i)?;
        Ok(true)
    }

    pub fn value(&self, i: usize) -> Option<&Scalar> {
        self.state.known_values.get(&i)
    }

    /// True iff `i` is still open and strictly contains `[v_j - delta, v_j + delta]`.
    pub fn contains_window_of(&self, i: usize, j: usize) -> bool {
        match self.value(j) {
            Some(v) => !self.state.is_queried(i) && singleton_witness_value(&self.state.current[i], v, self.delta()),
            None => false,
        }
    }

    /// Repeatedly queries the smallest open interval containing the window of a known value.
    pub fn flush_value_witnesses(&mut self) -> Result<()> {
        while let Some(i) = self.state.value_witness() {
            self.begin_group();
            self.query(i)?;
        }
        Ok(())
    }

    /// Repeatedly queries the smallest open interval `i` with `I_i ⊃ [l_j - delta, r_j + delta]`.
    pub fn flush_static_witnesses(&mut self) -> Result<()> {
        loop {
            let found = {
                let me = &*self;
                me.state.static_witness(|i| !me.is_exhausted(i))
            };
            let Some(i) = found else {
                return Ok(());
            };
            self.begin_group();
            self.query(i)?;
        }
    }

    pub fn finish(self, algorithm: &str) -> Result<RunReport> {
        let permutation = build_permutation(&self.state)?;
        Ok(self.finish_with(algorithm, permutation))
    }

    pub fn finish_with(self, algorithm: &str, permutation: Permutation) -> RunReport {
        let groups = self.groups.into_iter().filter(|g| !g.is_empty()).collect();
        RunReport {
            algorithm: algorithm.to_string(),
            total_cost: self.state.spent.clone(),
            query_counts: self.state.query_counts.clone(),
            transcript: self.transcript,
            groups,
            permutation,
            advice: None,
            seed: None,
            final_state: self.state,
        }
    }
}

/// Advice questions asked during a run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdviceUsage {
    /// Number of possible answers to each question.
    pub question_sizes: Vec<usize>,
}

impl AdviceUsage {
    /// `ceil(log2(prod |K_t|))`, computed exactly.
    pub fn bits(&self) -> u64 {
        let product = self
            .question_sizes
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * BigUint::from(k));
        ceil_log2(&product)
    }

    pub fn log2_sum(&self) -> f64 {
        self.question_sizes.iter().map(|&k| (k as f64).log2()).sum()
    }
}

/// Smallest `k` with `2^k >= x` (`x >= 1`).
pub fn ceil_log2(x: &BigUint) -> u64 {
    let bits = x.bits();
    if bits == 0 {
        return 0;
    }
    // x is a power of two iff x == 1 << (bits - 1)
    if *x == BigUint::one() << (bits - 1) {
        bits - 1
    } else {
        bits
    }
}

/// Everything an algorithm did during one run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub algorithm: String,
    pub transcript: Vec<QueryRecord>,
    pub query_counts: Vec<usize>,
    pub total_cost: Scalar,
    /// Queries grouped by the algorithm step that issued them.
    pub groups: Vec<Vec<usize>>,
    pub permutation: Permutation,
    pub advice: Option<AdviceUsage>,
    pub seed: Option<u64>,
    pub final_state: KnowledgeState,
}

impl RunReport {
    pub fn queried(&self) -> Vec<usize> {
        (0..self.query_counts.len())
            .filter(|&i| self.query_counts[i] > 0)
            .collect()
    }

    pub fn query_count(&self) -> usize {
        self.transcript.len()
    }

    pub fn advice_bits(&self) -> Option<u64> {
        self.advice.as_ref().map(AdviceUsage::bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn ceil_log2_values() {
        let c = |x: u64| ceil_log2(&BigUint::from(x));
        assert_eq!(c(1), 0);
        assert_eq!(c(2), 1);
        assert_eq!(c(3), 2);
        assert_eq!(c(8), 3);
        assert_eq!(c(9), 4);
        let usage = AdviceUsage {
            question_sizes: vec![3; 5],
        };
        // 3^5 = 243 <= 256
        assert_eq!(usage.bits(), 8);
    }

    #[test]
    fn exact_model_rejects_repeats() {
        let inst = Instance::from_pairs(
            int(0),
            &[(int(0), int(10)), (int(4), int(14))],
            Some(vec![int(7), int(12)]),
        )
        .unwrap();
        let mut env = Environment::exact(&inst).unwrap();
        env.query(0).unwrap();
        assert_eq!(env.query(0), Err(Error::AlreadyQueried(0)));
        assert_eq!(env.state.spent, int(1));
        env.flush_value_witnesses().unwrap();
        assert_eq!(env.state.spent, int(2));
        let report = env.finish("test").unwrap();
        assert_eq!(report.permutation.order, vec![0, 1]);
        assert_eq!(report.groups, vec![vec![0], vec![1]]);
    }

    #[test]
    fn refinement_model_follows_script() {
        let mut inst = Instance::from_pairs(int(0), &[(int(0), int(10))], Some(vec![int(3)])).unwrap();
        inst.refinements = Some(vec![RefinementScript::new(vec![(int(1), int(9)), (int(3), int(3))])]);
        inst.time_costs = Some(vec![vec![int(2), int(5)]]);
        let mut env = Environment::refinement(&inst).unwrap();
        env.query(0).unwrap();
        env.query(0).unwrap();
        assert_eq!(env.query(0), Err(Error::ScriptExhausted(0)));
        assert_eq!(env.state.spent, int(7));
        assert_eq!(env.state.current[0].lo, int(3));
    }
}
