//! Instance generators, adversarial families, fixtures and the on-disk document format.

mod asteroid;
mod document;
mod families;
mod random;
mod search;

pub use asteroid::{asteroid_labels, asteroid_realization, AsteroidKind};
pub use document::{deserialize, serialize, FORMAT_VERSION};
pub use families::{
    advice_triangle_ok, gen_advice_pairs, gen_advice_triangles, gen_cost_path, gen_cpcp_adversary, gen_figure3_chain,
    gen_lemma4_pair, gen_lemma7_two_triangles, gen_nested_star, gen_tight_path, gen_triangle_chain,
    two_triangles_adversary, two_triangles_intervals, FirstProbe,
};
pub use random::{gen_laminar, gen_random, gen_random_scripted, CostModel, ValueModel};
pub use search::{adversarial_search, competitive_ratio, optimum_cost, value_grid, SearchHit, MAX_ASSIGNMENTS};

use crate::error::Result;
use crate::instance::Instance;
use crate::interval::UncertainInterval;
use crate::scalar::{format_scalar, Scalar};

/// True iff every intersecting pair is strictly nested.
pub fn is_laminar(intervals: &[UncertainInterval]) -> bool {
    intervals.iter().enumerate().all(|(i, a)| {
        intervals[i + 1..].iter().all(|b| {
            let disjoint = a.hi < b.lo || b.hi < a.lo;
            let strict_in = |x: &UncertainInterval, y: &UncertainInterval| y.lo < x.lo && x.hi < y.hi;
            disjoint || strict_in(a, b) || strict_in(b, a)
        })
    })
}

/// A family tag with its parameters; [`GeneratorSpec::generate`] is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Random {
        seed: u64,
        n: usize,
        delta: Scalar,
        cost_model: CostModel,
        value_model: ValueModel,
    },
    RandomScripted {
        seed: u64,
        n: usize,
        max_steps: usize,
    },
    Laminar {
        seed: u64,
        n: usize,
        depth: usize,
    },
    Lemma4Pair {
        delta: Scalar,
        first: FirstProbe,
    },
    TwoTriangles,
    Figure3Chain {
        k: usize,
    },
    TriangleChain {
        k: usize,
        lone: FirstProbe,
    },
    NestedStar {
        n: usize,
    },
    CostPath {
        n: usize,
        eps: Scalar,
    },
    CpcpAdversary {
        n: usize,
        m: usize,
    },
    AdviceTriangles {
        m: usize,
        delta: Scalar,
        variant: usize,
    },
    AdvicePairs {
        pairs: usize,
    },
    TightPath {
        w: Scalar,
    },
    Asteroid {
        kind: AsteroidKind,
        k: usize,
        delta: Scalar,
        eps: Scalar,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Instance> {
        match self {
            GeneratorSpec::Random {
                seed,
                n,
                delta,
                cost_model,
                value_model,
            } => gen_random(*seed, *n, delta.clone(), *cost_model, *value_model),
            GeneratorSpec::RandomScripted { seed, n, max_steps } => gen_random_scripted(*seed, *n, *max_steps),
            GeneratorSpec::Laminar { seed, n, depth } => gen_laminar(*seed, *n, *depth),
            GeneratorSpec::Lemma4Pair { delta, first } => gen_lemma4_pair(delta, *first),
            GeneratorSpec::TwoTriangles => gen_lemma7_two_triangles(),
            GeneratorSpec::Figure3Chain { k } => gen_figure3_chain(*k),
            GeneratorSpec::TriangleChain { k, lone } => gen_triangle_chain(*k, *lone),
            GeneratorSpec::NestedStar { n } => gen_nested_star(*n),
            GeneratorSpec::CostPath { n, eps } => gen_cost_path(*n, eps),
            GeneratorSpec::CpcpAdversary { n, m } => gen_cpcp_adversary(*n, *m),
            GeneratorSpec::AdviceTriangles { m, delta, variant } => gen_advice_triangles(*m, delta, *variant),
            GeneratorSpec::AdvicePairs { pairs } => gen_advice_pairs(*pairs),
            GeneratorSpec::TightPath { w } => gen_tight_path(w),
            GeneratorSpec::Asteroid { kind, k, delta, eps } => asteroid_realization(*kind, *k, delta, eps),
        }
    }

    /// Short identifier used in reports, e.g. `cost-path(n=8,eps=1/1000)`.
    pub fn label(&self) -> String {
        let f = format_scalar;
        match self {
            GeneratorSpec::Random { seed, n, delta, .. } => format!("random(n={n},delta={},seed={seed})", f(delta)),
            GeneratorSpec::RandomScripted { seed, n, max_steps } => {
                format!("scripted(n={n},steps={max_steps},seed={seed})")
            }
            GeneratorSpec::Laminar { seed, n, depth } => format!("laminar(n={n},depth={depth},seed={seed})"),
            GeneratorSpec::Lemma4Pair { delta, first } => format!("lemma4(delta={},{first:?})", f(delta)),
            GeneratorSpec::TwoTriangles => "two-triangles".into(),
            GeneratorSpec::Figure3Chain { k } => format!("figure3(k={k})"),
            GeneratorSpec::TriangleChain { k, lone } => format!("triangle-chain(k={k},{lone:?})"),
            GeneratorSpec::NestedStar { n } => format!("nested-star(n={n})"),
            GeneratorSpec::CostPath { n, eps } => format!("cost-path(n={n},eps={})", f(eps)),
            GeneratorSpec::CpcpAdversary { n, m } => format!("cpcp(n={n},M={m})"),
            GeneratorSpec::AdviceTriangles { m, delta, variant } => {
                format!("advice-triangles(m={m},delta={},variant={variant})", f(delta))
            }
            GeneratorSpec::AdvicePairs { pairs } => format!("advice-pairs({pairs})"),
            GeneratorSpec::TightPath { w } => format!("tight-path(w={})", f(w)),
            GeneratorSpec::Asteroid { kind, k, delta, eps } => {
                format!("asteroid({kind:?},k={k},delta={},eps={})", f(delta), f(eps))
            }
        }
    }
}

/// Family names accepted by the command-line generator.
pub fn family_names() -> &'static [&'static str] {
    &[
        "random",
        "scripted",
        "laminar",
        "lemma4",
        "two-triangles",
        "figure3",
        "triangle-chain",
        "nested-star",
        "cost-path",
        "cpcp",
        "advice-triangles",
        "advice-pairs",
        "tight-path",
        "asteroid",
    ]
}
