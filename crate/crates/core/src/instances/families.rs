use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{instance_graph, min_cost_vertex_cover_in_order, peo_min_right};
use crate::instance::{Instance, RefinementScript};
use crate::interval::UncertainInterval;
use crate::scalar::{format_scalar, int, rat, Scalar};

fn unit(lo: Scalar, hi: Scalar) -> UncertainInterval {
    UncertainInterval { lo, hi, cost: int(1) }
}

fn ints(pairs: &[(i64, i64)]) -> Vec<UncertainInterval> {
    pairs.iter().map(|&(lo, hi)| unit(int(lo), int(hi))).collect()
}

/// Which member of a lone dependent pair an algorithm probes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstProbe {
    Left,
    Right,
}

/// Two overlapping intervals `[0, 10s]` and `[4s, 14s]` with `s` large enough that the overlap
/// exceeds `2 delta`. The realization punishes probing `first` first: that probe lands inside
/// the other interval while the other value lies outside the probed one.
pub fn gen_lemma4_pair(delta: &Scalar, first: FirstProbe) -> Result<Instance> {
    if delta.is_negative() {
        return Err(Error::InvalidParameters("delta must be non-negative".into()));
    }
    let s = (delta / int(3)).floor() + int(1);
    let intervals = vec![unit(int(0), int(10) * &s), unit(int(4) * &s, int(14) * &s)];
    let values = match first {
        FirstProbe::Left => vec![int(7) * &s, int(12) * &s],
        FirstProbe::Right => vec![int(2) * &s, int(7) * &s],
    };
    Instance::with_values(delta.clone(), intervals, values)
}

/// Two triangles `abc` and `cde` of proper intervals, sharing `c`.
pub fn two_triangles_intervals() -> Vec<UncertainInterval> {
    ints(&[(0, 10), (2, 12), (4, 21), (13, 23), (15, 25)])
}

/// Values for the two-triangle gadget that punish an algorithm whose first query is `first`
/// (0..5 for `a..e`) and which probes any remaining lone pair from the `lone` side.
pub fn two_triangles_adversary(first: usize, lone: FirstProbe) -> Result<Vec<Scalar>> {
    let h = |x: i64| rat(x, 2);
    // Bad pair values: the probed side lands inside its partner, the partner stays outside.
    let ab = match lone {
        FirstProbe::Left => [int(5), int(11)],
        FirstProbe::Right => [h(3), int(5)],
    };
    let de = match lone {
        FirstProbe::Left => [int(22), int(24)],
        FirstProbe::Right => [int(14), int(16)],
    };
    let v = match first {
        // a lands in b and c; b and c land outside a, d and e.
        0 => vec![int(5), int(11), h(25), de[0].clone(), de[1].clone()],
        // b lands in a and c; a and c land outside b, d and e.
        1 => vec![h(3), int(5), h(25), de[0].clone(), de[1].clone()],
        // c lands outside every other interval.
        2 => vec![ab[0].clone(), ab[1].clone(), h(25), de[0].clone(), de[1].clone()],
        // d lands in c and e; c and e land outside a, b and d.
        3 => vec![ab[0].clone(), ab[1].clone(), h(25), int(18), int(24)],
        // e lands in c and d; c and d land outside a, b and e.
        4 => vec![ab[0].clone(), ab[1].clone(), int(14), h(27), int(18)],
        _ => return Err(Error::InvalidParameters(format!("no interval {first} in the gadget"))),
    };
    Ok(v)
}

/// The two-triangle gadget with the realization that punishes a first query on `b`, which is
/// where the `x, y, z` rule starts, and lone pairs probed from the left.
pub fn gen_lemma7_two_triangles() -> Result<Instance> {
    Instance::with_values(
        int(0),
        two_triangles_intervals(),
        two_triangles_adversary(1, FirstProbe::Left)?,
    )
}

/// `k` triangles in a row, each linked to the next, followed by one pendant pair.
///
/// Block `i` starts at `s = 13 i` with `A = [s, s+10]`, `B = [s+2, s+12]`, `C = [s+8, s+21]`;
/// the pair is `D = [13k, 13k+10]`, `E = [13k+2, 13k+12]`. Under the realization every block
/// is probed in full while two members suffice, and the pair is resolved by its non-probed side.
pub fn gen_triangle_chain(k: usize, lone: FirstProbe) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let mut intervals = Vec::with_capacity(3 * k + 2);
    let mut values = Vec::with_capacity(3 * k + 2);
    for i in 0..k as i64 {
        let s = 13 * i;
        intervals.extend(ints(&[(s, s + 10), (s + 2, s + 12), (s + 8, s + 21)]));
        values.extend([int(s + 1), int(s + 9), int(s) + rat(25, 2)]);
    }
    let s = 13 * k as i64;
    intervals.extend(ints(&[(s, s + 10), (s + 2, s + 12)]));
    match lone {
        FirstProbe::Left => values.extend([int(s + 5), int(s + 11)]),
        FirstProbe::Right => values.extend([int(s + 1), int(s + 5)]),
    }
    Instance::with_values(int(0), intervals, values)
}

/// Chain of `k` two-triangle gadgets separated by connector pairs, `7k + 2` intervals in all.
///
/// Vertex `7i` and `7i + 1` (0-based) are the connectors `x_i, y_i`; their values lie in both
/// connector intervals so every solution queries both. `y_i` overlaps the first gadget interval
/// of block `i` and `x_{i+1}` the last one. Gadget values make the `x, y, z` rule enter each
/// block at its first interval and leave the pair `de` resolvable by `d` alone.
pub fn gen_figure3_chain(k: usize) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let mut intervals = Vec::with_capacity(7 * k + 2);
    let mut values = Vec::with_capacity(7 * k + 2);
    for i in 0..=k as i64 {
        let g = 36 * i;
        intervals.extend(ints(&[(g - 12, g - 5), (g - 6, g + 1)]));
        values.extend([int(g) - rat(21, 4), int(g) - rat(23, 4)]);
        if i < k as i64 {
            for (lo, hi) in [(0, 10), (2, 12), (4, 21), (13, 23), (15, 25)] {
                intervals.push(unit(int(g + lo), int(g + hi)));
            }
            values.extend([int(g + 5), int(g + 11), int(g) + rat(25, 2), int(g + 14), int(g + 16)]);
        }
    }
    Instance::with_values(int(0), intervals, values)
}

/// `n - 1` disjoint unit intervals inside one big interval whose value lies left of all of them.
pub fn gen_nested_star(n: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidParameters("n must be at least 2".into()));
    }
    let m = n as i64 - 1;
    let mut intervals: Vec<UncertainInterval> = (0..m).map(|i| unit(int(3 * i + 1), int(3 * i + 2))).collect();
    let mut values: Vec<Scalar> = (0..m).map(|i| int(3 * i + 1) + rat(1, 2)).collect();
    intervals.push(unit(int(0), int(3 * m)));
    values.push(int(0));
    Instance::with_values(int(0), intervals, values)
}

/// Interval `k` (1-based) of the path layout `[6(k-1), 6k+4]`.
fn path_interval(k: i64, cost: Scalar) -> UncertainInterval {
    UncertainInterval {
        lo: int(6 * (k - 1)),
        hi: int(6 * k + 4),
        cost,
    }
}

/// Values for the forced pair `(2i+1, 2i+2)` of the path layout, both inside the overlap.
fn forced_pair_values(i: i64) -> [Scalar; 2] {
    let base = 6 * (2 * i + 1);
    [int(base + 1), int(base + 3)]
}

/// A path of `2n` intervals: a lone-pair gadget of cost 1 followed by `2n - 2` intervals of
/// cost `eps` whose values force all of them into every solution.
///
/// The gadget punishes whichever of its two members the cheapest vertex cover in right-endpoint
/// elimination order selects.
pub fn gen_cost_path(n: usize, eps: &Scalar) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if !eps.is_positive() || eps * int(2 * n as i64) >= int(1) {
        return Err(Error::InvalidParameters(format!(
            "eps must lie in (0, 1/(2n)), got {}",
            format_scalar(eps)
        )));
    }
    let intervals: Vec<UncertainInterval> = (1..=2 * n as i64)
        .map(|k| path_interval(k, if k <= 2 { int(1) } else { eps.clone() }))
        .collect();
    let mut values = vec![int(0), int(0)];
    for i in 1..n as i64 {
        values.extend(forced_pair_values(i));
    }
    let skeleton = Instance::new(int(0), intervals.clone())?;
    let g = instance_graph(&skeleton);
    let cover = min_cost_vertex_cover_in_order(&g, &peo_min_right(&g, &intervals)?)?;
    if cover.contains(&0) {
        values[0] = int(8);
        values[1] = int(11);
    } else {
        values[0] = int(3);
        values[1] = int(8);
    }
    Instance::with_values(int(0), intervals, values)
}

/// A path of `2n` unit-cost intervals for the refinement model.
///
/// The first `2n - 2` resolve to points on their first query and force each other. The last
/// pair stalls: interval `2n - 1` returns itself for `2M - 1` queries, interval `2n` for
/// `M - 1` queries and then a point outside interval `2n - 1`.
pub fn gen_cpcp_adversary(n: usize, m: usize) -> Result<Instance> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters("n and M must be at least 1".into()));
    }
    let len = 2 * n as i64;
    let intervals: Vec<UncertainInterval> = (1..=len).map(|k| path_interval(k, int(1))).collect();
    let mut values = Vec::with_capacity(len as usize);
    let mut scripts = Vec::with_capacity(len as usize);
    for i in 0..n as i64 - 1 {
        for v in forced_pair_values(i) {
            scripts.push(RefinementScript::exact(v.clone()));
            values.push(v);
        }
    }
    let stall = |iv: &UncertainInterval, copies: usize, end: Scalar| {
        let mut steps = vec![(iv.lo.clone(), iv.hi.clone()); copies];
        steps.push((end.clone(), end));
        RefinementScript::new(steps)
    };
    let a = &intervals[len as usize - 2];
    let b = &intervals[len as usize - 1];
    let va = int(6 * (len - 2) + 5);
    let vb = &a.hi + int(1);
    scripts.push(stall(a, 2 * m - 1, va.clone()));
    scripts.push(stall(b, m - 1, vb.clone()));
    values.extend([va, vb]);
    let inst = Instance {
        delta: Scalar::zero(),
        intervals,
        values: Some(values),
        refinements: Some(scripts),
        time_costs: None,
    };
    inst.validate()?;
    Ok(inst)
}

/// Offsets of one advice triangle, in units of `delta`:
/// `[0, 6]`, `[4/5, 36/5]`, `[2, 8]`.
fn advice_triangle(delta: &Scalar, offset: &Scalar) -> [UncertainInterval; 3] {
    let at = |x: Scalar| offset + x * delta;
    [
        unit(at(int(0)), at(int(6))),
        unit(at(rat(4, 5)), at(rat(36, 5))),
        unit(at(int(2)), at(int(8))),
    ]
}

/// Checks the six inequalities that make one advice triangle work.
pub fn advice_triangle_ok(t: &[UncertainInterval], delta: &Scalar) -> bool {
    let (l1, l2, l3) = (&t[0].lo, &t[1].lo, &t[2].lo);
    let (r1, r2, r3) = (&t[0].hi, &t[1].hi, &t[2].hi);
    l1 < l2
        && l2 < &(l3 - delta)
        && &(r1 + delta) < r2
        && r2 < r3
        && l2 <= &(l1 + delta)
        && r2 >= &(r3 - delta)
        && r1 - l3 > delta * int(2)
}

/// `m` far-apart triangles for `delta > 0`. Variant 1 puts every value at the right endpoint,
/// variant 3 at the left endpoint, variant 2 mixes them so that the middle interval is the one
/// to skip. In variant `t` the unique optimum leaves out interval `t` of every triangle.
pub fn gen_advice_triangles(m: usize, delta: &Scalar, variant: usize) -> Result<Instance> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    if !delta.is_positive() {
        return Err(Error::InvalidParameters("delta must be positive".into()));
    }
    let mut intervals = Vec::with_capacity(3 * m);
    let mut values = Vec::with_capacity(3 * m);
    for t in 0..m {
        let offset = int(20 * t as i64) * delta;
        let tri = advice_triangle(delta, &offset);
        if !advice_triangle_ok(&tri, delta) {
            return Err(Error::InvalidParameters("triangle inequalities violated".into()));
        }
        let v = match variant {
            1 => [tri[0].hi.clone(), tri[1].hi.clone(), tri[2].hi.clone()],
            2 => [tri[0].lo.clone(), &offset + int(4) * delta, tri[2].hi.clone()],
            3 => [tri[0].lo.clone(), tri[1].lo.clone(), tri[2].lo.clone()],
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "variant must be 1, 2 or 3, got {variant}"
                )))
            }
        };
        intervals.extend(tri);
        values.extend(v);
    }
    Instance::with_values(delta.clone(), intervals, values)
}

/// `pairs` far-apart copies of the lone-pair gadget with `delta = 0`.
pub fn gen_advice_pairs(pairs: usize) -> Result<Instance> {
    let mut intervals = Vec::with_capacity(2 * pairs);
    let mut values = Vec::with_capacity(2 * pairs);
    for p in 0..pairs as i64 {
        let o = 20 * p;
        intervals.extend(ints(&[(o, o + 10), (o + 4, o + 14)]));
        if p % 2 == 0 {
            values.extend([int(o + 7), int(o + 12)]);
        } else {
            values.extend([int(o + 2), int(o + 7)]);
        }
    }
    Instance::with_values(int(0), intervals, values)
}

/// Three intervals with costs `1, w, w` on which the residual-weight trials are tight.
pub fn gen_tight_path(w: &Scalar) -> Result<Instance> {
    if !w.is_positive() {
        return Err(Error::InvalidParameters("w must be positive".into()));
    }
    let intervals = vec![
        UncertainInterval::new(int(0), int(4), int(1))?,
        UncertainInterval::new(int(3), int(8), w.clone())?,
        UncertainInterval::new(int(7), int(12), w.clone())?,
    ];
    Instance::with_values(int(0), intervals, vec![int(1), rat(11, 2), rat(15, 2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offline::brute_force_optimum;

    #[test]
    fn lone_pair_geometry() {
        let inst = gen_lemma4_pair(&int(2), FirstProbe::Left).unwrap();
        let (a, b) = (&inst.intervals[0], &inst.intervals[1]);
        assert!(a.lo < b.lo && b.lo < a.hi && a.hi < b.hi);
        assert!(&a.hi - &b.lo > int(4));
    }

    #[test]
    fn advice_triangles_satisfy_inequalities() {
        for d in [rat(1, 2), int(1), int(3)] {
            let inst = gen_advice_triangles(2, &d, 1).unwrap();
            assert!(inst.intervals.chunks(3).all(|t| advice_triangle_ok(t, &d)));
        }
    }

    #[test]
    fn every_adversary_is_valid() {
        for first in 0..5 {
            for lone in [FirstProbe::Left, FirstProbe::Right] {
                let values = two_triangles_adversary(first, lone).unwrap();
                let inst = Instance::with_values(int(0), two_triangles_intervals(), values).unwrap();
                assert_eq!(
                    brute_force_optimum(&inst).unwrap().cost,
                    int(3),
                    "first {first}, {lone:?}"
                );
            }
        }
    }

    #[test]
    fn cpcp_scripts_have_expected_lengths() {
        let inst = gen_cpcp_adversary(2, 5).unwrap();
        let lens: Vec<usize> = inst.refinements.as_ref().unwrap().iter().map(|s| s.len()).collect();
        assert_eq!(lens, vec![1, 1, 10, 5]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_cost_path(4, &rat(1, 8)).is_err());
        assert!(gen_cost_path(4, &int(0)).is_err());
        assert!(gen_advice_triangles(1, &int(0), 1).is_err());
        assert!(gen_nested_star(1).is_err());
    }
}
