use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, int, parse_scalar, sqrt3_bounds, Enclosure, Scalar};

/// Precision of the rational bracket around `sqrt(3)` used for enclosures.
const SQRT3_BITS: u32 = 64;

/// Probability of taking the "first" branch of a trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probability {
    /// A rational probability in `[0, 1]`.
    Exact(Scalar),
    /// `min(1, ratio / sqrt(3))` for a non-negative rational `ratio`.
    InvSqrt3(Scalar),
}

impl Probability {
    pub fn exact(p: Scalar) -> Self {
        Probability::Exact(p.clamp(Scalar::zero(), Scalar::one()))
    }

    pub fn is_one(&self) -> bool {
        match self {
            Probability::Exact(p) => p.is_one(),
            Probability::InvSqrt3(r) => r * r >= int(3),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Probability::Exact(p) => p.is_zero(),
            Probability::InvSqrt3(r) => r.is_zero(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.is_one() || self.is_zero()
    }

    /// Decides the branch for a uniform sample `u` in `[0, 1)`.
    pub fn sample(&self, u: &Scalar) -> bool {
        match self {
            Probability::Exact(p) => u < p,
            // u < r / sqrt(3)  <=>  3u^2 < r^2 for non-negative u, r.
            Probability::InvSqrt3(r) => int(3) * u * u < r * r,
        }
    }

    pub fn enclosure(&self) -> Enclosure {
        match self {
            Probability::Exact(p) => Enclosure::exact(p.clone()),
            Probability::InvSqrt3(_) if self.is_one() => Enclosure::exact(Scalar::one()),
            Probability::InvSqrt3(r) => {
                let (lo, hi) = sqrt3_bounds(SQRT3_BITS);
                Enclosure {
                    lo: r / hi,
                    hi: (r / lo).min(Scalar::one()),
                }
            }
        }
    }
}

/// How an algorithm turns weights into a trial probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbabilityRule {
    Fixed(Scalar),
    /// `min(1, w(N) / (2 w_b))`.
    Half,
    /// `min(1, w(N) / (sqrt(3) w_b))`.
    Sqrt3,
}

impl ProbabilityRule {
    pub fn parse(rule: &str, p: Option<&str>) -> Result<Self> {
        match rule {
            "fixed" => {
                let p = parse_scalar(p.unwrap_or("1/2"))?;
                if p.is_negative() || p > Scalar::one() {
                    return Err(Error::InvalidParameters(format!(
                        "probability {} outside [0, 1]",
                        format_scalar(&p)
                    )));
                }
                Ok(ProbabilityRule::Fixed(p))
            }
            "half" => Ok(ProbabilityRule::Half),
            "sqrt3" => Ok(ProbabilityRule::Sqrt3),
            other => Err(Error::UnsupportedRule(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ProbabilityRule::Fixed(p) => format!("fixed({})", format_scalar(p)),
            ProbabilityRule::Half => "half".into(),
            ProbabilityRule::Sqrt3 => "sqrt3".into(),
        }
    }

    /// Probability of querying the trial centre, given the weight of its other side.
    pub fn probability(&self, side_weight: &Scalar, centre_weight: &Scalar) -> Probability {
        match self {
            ProbabilityRule::Fixed(p) => Probability::exact(p.clone()),
            ProbabilityRule::Half => Probability::exact(side_weight / (int(2) * centre_weight)),
            ProbabilityRule::Sqrt3 => Probability::InvSqrt3(side_weight / centre_weight),
        }
    }
}

/// Source of trial outcomes.
pub trait Coin {
    /// Returns `true` with probability `p`.
    fn flip(&mut self, p: &Probability) -> bool;
}

/// Deterministic pseudo-random coin; identical seeds give identical runs.
#[derive(Debug, Clone)]
pub struct SeededCoin {
    rng: ChaCha8Rng,
}

impl SeededCoin {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Coin for SeededCoin {
    fn flip(&mut self, p: &Probability) -> bool {
        if p.is_one() {
            return true;
        }
        if p.is_zero() {
            return false;
        }
        let u = Scalar::new(BigInt::from(self.rng.next_u32()), BigInt::one() << 32);
        p.sample(&u)
    }
}

/// Replays a fixed prefix of outcomes, then answers `true`; records every non-degenerate trial.
#[derive(Debug, Clone, Default)]
pub struct ScriptedCoin {
    prefix: Vec<bool>,
    pub trials: Vec<(Probability, bool)>,
}

impl ScriptedCoin {
    pub fn new(prefix: Vec<bool>) -> Self {
        Self {
            prefix,
            trials: Vec::new(),
        }
    }
}

impl Coin for ScriptedCoin {
    fn flip(&mut self, p: &Probability) -> bool {
        if p.is_one() {
            return true;
        }
        if p.is_zero() {
            return false;
        }
        let outcome = self.prefix.get(self.trials.len()).copied().unwrap_or(true);
        self.trials.push((p.clone(), outcome));
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sqrt3_probability_is_exactly_decided() {
        let p = Probability::InvSqrt3(int(1));
        assert!(!p.is_degenerate());
        assert!(p.sample(&rat(57, 100)));
        assert!(!p.sample(&rat(58, 100)));
        assert!(Probability::InvSqrt3(int(2)).is_one());
        let e = p.enclosure();
        assert!(e.lo > rat(577350, 1000000) && e.hi < rat(577351, 1000000));
        assert!(e.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn seeded_coin_is_reproducible() {
        let p = Probability::exact(rat(1, 2));
        let a: Vec<bool> = {
            let mut c = SeededCoin::new(9);
            (0..64).map(|_| c.flip(&p)).collect()
        };
        let mut c = SeededCoin::new(9);
        let b: Vec<bool> = (0..64).map(|_| c.flip(&p)).collect();
        assert_eq!(a, b);
        assert!(a.iter().any(|&x| x) && a.iter().any(|&x| !x));
    }

    #[test]
    fn rules() {
        assert_eq!(
            ProbabilityRule::Half.probability(&int(1), &rat(4, 3)),
            Probability::Exact(rat(3, 8))
        );
        assert_eq!(
            ProbabilityRule::Half.probability(&int(5), &int(1)),
            Probability::Exact(int(1))
        );
        assert!(ProbabilityRule::parse("fixed", Some("3/2")).is_err());
        assert!(ProbabilityRule::parse("bogus", None).is_err());
    }
}
