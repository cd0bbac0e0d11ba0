use num_traits::Signed;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::interval::UncertainInterval;
use crate::scalar::{int, Scalar};

/// The two non-interval graph families that nevertheless arise as dependency graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsteroidKind {
    /// A path `c, b_1, ..., b_k, d` plus `a` adjacent to every `b_i` and a pendant `e` on `a`.
    Single,
    /// As above with two adjacent hubs `a, a'`; `a` also sees `c`, `a'` also sees `d`, and `e`
    /// sees both hubs.
    Double,
}

impl AsteroidKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fig5a" | "single" => Ok(AsteroidKind::Single),
            "fig5b" | "double" => Ok(AsteroidKind::Double),
            other => Err(Error::InvalidParameters(format!("unknown asteroid kind {other:?}"))),
        }
    }
}

/// Vertex names in instance order: `c, b1..bk, d, a, [a',] e`.
pub fn asteroid_labels(kind: AsteroidKind, k: usize) -> Vec<String> {
    let mut labels = vec!["c".to_string()];
    labels.extend((1..=k).map(|i| format!("b{i}")));
    labels.push("d".into());
    labels.push("a".into());
    if kind == AsteroidKind::Double {
        labels.push("a'".into());
    }
    labels.push("e".into());
    labels
}

/// Realizes the family as intervals with tolerance `delta`.
///
/// With `x` the left end of `b_2`, `b_1` ends at `x + delta + eps` and `e = [x + eps, x + delta]`,
/// so `b_1` and `b_2` are dependent while `e` is dependent on neither. All intervals have unit
/// cost and no realization values are attached.
pub fn asteroid_realization(kind: AsteroidKind, k: usize, delta: &Scalar, eps: &Scalar) -> Result<Instance> {
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    if !eps.is_positive() || eps >= delta {
        return Err(Error::InvalidParameters("need 0 < eps < delta".into()));
    }
    let d = delta;
    let at = |x: i64| int(x) * d;
    let iv = |lo: Scalar, hi: Scalar| UncertainInterval { lo, hi, cost: int(1) };
    let mut bs = vec![iv(at(1), at(6) + eps), iv(at(5), at(9))];
    for i in 3..=k as i64 {
        let shift = 3 * (i - 3);
        bs.push(iv(at(7 + shift), at(12 + shift)));
    }
    let lbk = bs[k - 1].lo.clone();
    let ld = &lbk + at(2);
    let mut intervals = vec![iv(int(0), at(3))];
    intervals.extend(bs);
    intervals.push(iv(ld.clone(), &ld + at(3)));
    match kind {
        AsteroidKind::Single => intervals.push(iv(at(4), &lbk + at(2))),
        AsteroidKind::Double => {
            intervals.push(iv(at(1), &lbk + at(2)));
            intervals.push(iv(at(4), &ld + at(2)));
        }
    }
    intervals.push(iv(at(5) + eps, at(6)));
    Instance::new(delta.clone(), intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{instance_graph, is_chordal};
    use crate::scalar::rat;

    #[test]
    fn gap_vertex_is_isolated_from_the_first_two_bs() {
        let inst = asteroid_realization(AsteroidKind::Single, 2, &int(1), &rat(1, 4)).unwrap();
        let g = instance_graph(&inst);
        let e = inst.len() - 1;
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(e, 1) && !g.has_edge(e, 2));
        assert!(is_chordal(&g));
    }

    #[test]
    fn rejects_large_eps() {
        assert!(asteroid_realization(AsteroidKind::Double, 3, &int(1), &int(1)).is_err());
    }
}
