//! Query environments and the adaptive, oblivious, randomized and advice-assisted strategies.

mod advice;
mod alg1;
mod alg2;
mod alg3;
mod coin;
mod deterministic;
mod env;
mod expected;

pub use advice::{advice_half, advice_lg3, AdviceOracle};
pub use alg1::{algorithm1, no_2component_after_preprocess, PreprocessSummary};
pub use alg2::algorithm2;
pub use alg3::algorithm3_cpcp;
pub use coin::{Coin, Probability, ProbabilityRule, ScriptedCoin, SeededCoin};
pub use deterministic::{run_oblivious, simple_adaptive, simple_adaptive_stable_sort, vc_adaptive};
pub use env::{ceil_log2, AdviceUsage, Environment, Model, QueryRecord, RunReport};
pub use expected::{expected_cost, MAX_BRANCHES};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::{Enclosure, Scalar};

/// Every strategy, with its parameters, behind one interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algorithm {
    Oblivious,
    Simple,
    StableSort,
    VertexCover,
    Alg1 { rule: ProbabilityRule, preprocess: bool },
    Alg2(ProbabilityRule),
    Alg3,
    AdviceHalf,
    AdviceLg3,
}

impl Algorithm {
    pub const NAMES: [&'static str; 9] = [
        "oblivious",
        "simple",
        "stable-sort",
        "vc",
        "alg1",
        "alg2",
        "alg3",
        "advice-half",
        "advice-lg3",
    ];

    /// Parses a command-line name; `rule` and `p` only matter for the randomized algorithms.
    pub fn parse(name: &str, rule: Option<&str>, p: Option<&str>) -> Result<Self> {
        Ok(match name {
            "oblivious" => Algorithm::Oblivious,
            "simple" => Algorithm::Simple,
            "stable-sort" => Algorithm::StableSort,
            "vc" => Algorithm::VertexCover,
            "alg1" => Algorithm::Alg1 {
                rule: ProbabilityRule::parse(rule.unwrap_or("fixed"), p)?,
                preprocess: true,
            },
            "alg2" => Algorithm::Alg2(ProbabilityRule::parse(rule.unwrap_or("half"), p)?),
            "alg3" | "cpcp" => Algorithm::Alg3,
            "advice-half" => Algorithm::AdviceHalf,
            "advice-lg3" => Algorithm::AdviceLg3,
            other => return Err(Error::InvalidParameters(format!("unknown algorithm {other:?}"))),
        })
    }

    pub fn name(&self) -> String {
        match self {
            Algorithm::Oblivious => "oblivious".into(),
            Algorithm::Simple => "simple".into(),
            Algorithm::StableSort => "stable-sort".into(),
            Algorithm::VertexCover => "vc".into(),
            Algorithm::Alg1 { rule, preprocess: true } => format!("alg1[{}]", rule.name()),
            Algorithm::Alg1 {
                rule,
                preprocess: false,
            } => format!("alg1[{},raw]", rule.name()),
            Algorithm::Alg2(rule) => format!("alg2[{}]", rule.name()),
            Algorithm::Alg3 => "alg3".into(),
            Algorithm::AdviceHalf => "advice-half".into(),
            Algorithm::AdviceLg3 => "advice-lg3".into(),
        }
    }

    pub fn is_randomized(&self) -> bool {
        match self {
            Algorithm::Alg1 {
                rule: ProbabilityRule::Fixed(p),
                ..
            } => !Probability::exact(p.clone()).is_degenerate(),
            Algorithm::Alg2(_) => true,
            _ => false,
        }
    }

    pub fn is_advice(&self) -> bool {
        matches!(self, Algorithm::AdviceHalf | Algorithm::AdviceLg3)
    }

    /// Runs on a fresh environment for `inst` (the refinement model for `Alg3`).
    pub fn run(&self, inst: &Instance, coin: &mut dyn Coin) -> Result<RunReport> {
        match self {
            Algorithm::Alg3 => return algorithm3_cpcp(Environment::refinement(inst)?),
            Algorithm::AdviceHalf | Algorithm::AdviceLg3 => {
                if matches!(self, Algorithm::AdviceHalf) && !num_traits::Zero::is_zero(&inst.delta) {
                    return Err(Error::DeltaNotZero(crate::scalar::format_scalar(&inst.delta)));
                }
                let mut oracle = AdviceOracle::from_brute_force(inst)?;
                let env = Environment::exact(inst)?;
                return if matches!(self, Algorithm::AdviceHalf) {
                    advice_half(env, &mut oracle)
                } else {
                    advice_lg3(env, &mut oracle)
                };
            }
            _ => {}
        }
        let env = Environment::exact(inst)?;
        match self {
            Algorithm::Oblivious => run_oblivious(env),
            Algorithm::Simple => simple_adaptive(env),
            Algorithm::StableSort => simple_adaptive_stable_sort(env),
            Algorithm::VertexCover => vc_adaptive(env),
            Algorithm::Alg1 { rule, preprocess } => algorithm1(env, rule, *preprocess, coin),
            Algorithm::Alg2(rule) => algorithm2(env, rule, coin),
            Algorithm::Alg3 | Algorithm::AdviceHalf | Algorithm::AdviceLg3 => unreachable!(),
        }
    }

    pub fn run_seeded(&self, inst: &Instance, seed: u64) -> Result<RunReport> {
        let mut coin = SeededCoin::new(seed);
        let mut report = self.run(inst, &mut coin)?;
        report.seed = Some(seed);
        Ok(report)
    }

    /// Expected total cost over the algorithm's own coin flips.
    pub fn expected_cost(&self, inst: &Instance) -> Result<Enclosure> {
        expected_cost(|coin| self.run(inst, coin).map(|r| r.total_cost))
    }
}

/// Expected cost of `alg` on `inst`; exact unless the `sqrt(3)` rule is involved.
pub fn expected_cost_exact(alg: &Algorithm, inst: &Instance) -> Result<Enclosure> {
    alg.expected_cost(inst)
}

/// Convenience: the cost of a deterministic run, or the midpoint of the expectation.
pub fn point_cost(alg: &Algorithm, inst: &Instance) -> Result<Scalar> {
    Ok(alg.expected_cost(inst)?.midpoint())
}
