use num_traits::Zero;

use super::DependencyGraph;
use crate::instance::Instance;
use crate::interval::UncertainInterval;
use crate::scalar::{int, Scalar};

/// Threshold-tolerance style representation: `u ~ v` iff `a(u) < b(v)` and `a(v) < b(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoTTFunctions {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl CoTTFunctions {
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.a[u] < self.b[v] && self.a[v] < self.b[u]
    }

    pub fn graph(&self) -> DependencyGraph {
        let n = self.a.len();
        let mut g = DependencyGraph::empty(vec![int(1); n]);
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// `a = lo`, `b = hi - delta`.
pub fn instance_to_cott(inst: &Instance) -> CoTTFunctions {
    CoTTFunctions {
        a: inst.intervals.iter().map(|iv| iv.lo.clone()).collect(),
        b: inst.intervals.iter().map(|iv| &iv.hi - &inst.delta).collect(),
    }
}

/// `delta = max(max(a - b), 0)`, `lo = a`, `hi = b + delta`, unit costs.
pub fn cott_to_instance(f: &CoTTFunctions) -> Instance {
    let delta =
        f.a.iter()
            .zip(&f.b)
            .map(|(a, b)| a - b)
            .fold(Scalar::zero(), |m, d| if d > m { d } else { m });
    let intervals =
        f.a.iter()
            .zip(&f.b)
            .map(|(a, b)| UncertainInterval {
                lo: a.clone(),
                hi: b + &delta,
                cost: int(1),
            })
            .collect();
    Instance {
        delta,
        intervals,
        values: None,
        refinements: None,
        time_costs: None,
    }
}
