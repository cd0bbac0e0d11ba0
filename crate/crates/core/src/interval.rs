//! Uncertainty intervals and the pairwise predicates everything else is built on.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// A closed interval `[lo, hi]` known to contain an item's value, plus the cost of querying it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UncertainInterval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub cost: Scalar,
}

impl UncertainInterval {
    pub fn new(lo: Scalar, hi: Scalar, cost: Scalar) -> Result<Self> {
        if lo > hi || cost.is_negative() {
            return Err(Error::InvalidInterval {
                lo: format_scalar(&lo),
                hi: format_scalar(&hi),
                cost: format_scalar(&cost),
            });
        }
        Ok(Self { lo, hi, cost })
    }

    /// The post-query state `[v, v]`; keeps the original cost for bookkeeping.
    pub fn point(value: Scalar, cost: Scalar) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
            cost,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn contains_value(&self, value: &Scalar) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// `self ⊆ other` as closed sets.
    pub fn is_subset_of(&self, other: &UncertainInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Same endpoints, different cost.
    pub fn with_cost(&self, cost: Scalar) -> Self {
        Self {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            cost,
        }
    }
}

/// Two intervals are dependent when neither order can be certified without a query:
/// `a.hi - b.lo > delta` and `b.hi - a.lo > delta`.
pub fn dependent(a: &UncertainInterval, b: &UncertainInterval, delta: &Scalar) -> bool {
    &(&a.hi - &b.lo) > delta && &(&b.hi - &a.lo) > delta
}

/// Width at most `delta`. Two trivial intervals are never dependent.
pub fn is_trivial(a: &UncertainInterval, delta: &Scalar) -> bool {
    &a.width() <= delta
}

/// `a ⊃ [b.lo - delta, b.hi + delta]` with strict containment at both ends.
///
/// When this holds `a` must be queried in every solution, whatever `b` turns out to be.
pub fn singleton_witness_static(a: &UncertainInterval, b: &UncertainInterval, delta: &Scalar) -> bool {
    a.lo < &b.lo - delta && a.hi > &b.hi + delta
}

/// `a ⊃ [v - delta, v + delta]`; identical to `dependent(a, [v, v], delta)`.
pub fn singleton_witness_value(a: &UncertainInterval, value: &Scalar, delta: &Scalar) -> bool {
    a.lo < value - delta && a.hi > value + delta
}

/// `a.hi - b.lo <= delta`: placing `a` before `b` is safe for every realization.
pub fn safe_before(a: &UncertainInterval, b: &UncertainInterval, delta: &Scalar) -> bool {
    &(&a.hi - &b.lo) <= delta
}

pub(crate) fn check_delta(delta: &Scalar) -> Result<()> {
    if delta.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "delta must be non-negative, got {}",
            format_scalar(delta)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn iv(lo: Scalar, hi: Scalar) -> UncertainInterval {
        UncertainInterval::new(lo, hi, int(1)).unwrap()
    }

    fn ii(lo: i64, hi: i64) -> UncertainInterval {
        iv(int(lo), int(hi))
    }

    #[test]
    fn three_interval_dependencies() {
        let zero = int(0);
        assert!(dependent(&ii(2, 7), &ii(0, 4), &zero));
        assert!(dependent(&ii(2, 7), &ii(5, 9), &zero));
        assert!(!dependent(&ii(0, 4), &ii(5, 9), &zero));
    }

    #[test]
    fn touching_endpoints_are_independent() {
        assert!(!dependent(&ii(0, 1), &ii(1, 2), &int(0)));
    }

    #[test]
    fn point_intervals() {
        let zero = int(0);
        assert!(dependent(&ii(7, 7), &ii(4, 14), &zero));
        assert!(!dependent(&ii(12, 12), &ii(0, 10), &zero));
    }

    #[test]
    fn triviality_uses_non_strict_width() {
        assert!(is_trivial(&ii(0, 1), &int(1)));
        assert!(!is_trivial(&ii(0, 2), &int(1)));
        assert!(is_trivial(&ii(5, 5), &int(0)));
    }

    #[test]
    fn static_witness() {
        let zero = int(0);
        assert!(singleton_witness_static(&ii(0, 10), &ii(4, 5), &zero));
        assert!(!singleton_witness_static(&ii(0, 10), &ii(0, 5), &zero));
        // 0 < 3 - 2 and 10 > 6 + 2
        assert!(singleton_witness_static(&ii(0, 10), &ii(3, 6), &int(2)));
    }

    #[test]
    fn value_witness() {
        let zero = int(0);
        assert!(singleton_witness_value(&ii(2, 7), &rat(11, 2), &zero));
        assert!(!singleton_witness_value(&ii(0, 4), &int(4), &zero));
        assert!(singleton_witness_value(&ii(4, 14), &int(7), &zero));
    }

    #[test]
    fn rejects_inverted_or_negative_cost() {
        assert!(UncertainInterval::new(int(3), int(2), int(1)).is_err());
        assert!(UncertainInterval::new(int(2), int(3), int(-1)).is_err());
    }
}
