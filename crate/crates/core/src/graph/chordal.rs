use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::DependencyGraph;
use crate::error::{Error, Result};
use crate::interval::UncertainInterval;
use crate::scalar::Scalar;

/// Maximum-cardinality search; the reverse of the visit order is a perfect elimination
/// ordering whenever the graph is chordal. Ties go to the smallest index.
pub fn mcs_elimination_order(g: &DependencyGraph) -> Vec<usize> {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(b.cmp(&a)))
            .expect("unvisited vertex");
        visited[v] = true;
        visit.push(v);
        for &u in &g.adj[v] {
            if !visited[u] {
                label[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

/// Returns the first vertex whose later neighbourhood in `order` is not a clique.
pub fn verify_elimination_order(g: &DependencyGraph, order: &[usize]) -> Option<usize> {
    let mut pos = vec![usize::MAX; g.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    for &v in order {
        let later: Vec<usize> = g.adj[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        // Checking against the earliest later neighbour is enough.
        let Some(&first) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != first && !g.has_edge(first, u)) {
            return Some(v);
        }
    }
    None
}

pub fn is_chordal(g: &DependencyGraph) -> bool {
    verify_elimination_order(g, &mcs_elimination_order(g)).is_none()
}

/// Vertices sorted by right endpoint (ties by index), checked to be a perfect elimination
/// ordering: every dependent vertex of minimum right endpoint is simplicial.
pub fn peo_min_right(g: &DependencyGraph, intervals: &[UncertainInterval]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| intervals[a].hi.cmp(&intervals[b].hi).then(a.cmp(&b)));
    let mut pos = vec![0; g.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    for &v in &order {
        let later: Vec<usize> = g.adj[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for (k, &a) in later.iter().enumerate() {
            if later[k + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                return Err(Error::NotSimplicial(v));
            }
        }
    }
    Ok(order)
}

/// Maximum-weight independent set along a perfect elimination ordering.
///
/// Forward pass: a vertex with positive residual weight is marked and its residual is
/// subtracted from its later neighbours. Backward pass: marked vertices are taken greedily.
pub fn max_weight_independent_set(g: &DependencyGraph, order: &[usize]) -> BTreeSet<usize> {
    let mut pos = vec![0; g.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut residual = g.weights.clone();
    let mut marked = Vec::new();
    for &v in order {
        if residual[v].is_positive() {
            marked.push(v);
            let r = residual[v].clone();
            for &u in &g.adj[v] {
                if pos[u] > pos[v] {
                    residual[u] -= &r;
                    if residual[u].is_negative() {
                        residual[u] = Scalar::zero();
                    }
                }
            }
        }
    }
    let mut chosen = BTreeSet::new();
    for &v in marked.iter().rev() {
        if g.adj[v].iter().all(|u| !chosen.contains(u)) {
            chosen.insert(v);
        }
    }
    chosen
}

/// Minimum-weight vertex cover as the complement of a maximum-weight independent set along `order`.
pub fn min_cost_vertex_cover_in_order(g: &DependencyGraph, order: &[usize]) -> Result<BTreeSet<usize>> {
    if verify_elimination_order(g, order).is_some() {
        return Err(Error::NotChordal);
    }
    let independent = max_weight_independent_set(g, order);
    // Isolated vertices never need covering.
    Ok((0..g.n())
        .filter(|v| !independent.contains(v) && g.degree(*v) > 0)
        .collect())
}

pub fn min_cost_vertex_cover(g: &DependencyGraph) -> Result<BTreeSet<usize>> {
    min_cost_vertex_cover_in_order(g, &mcs_elimination_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn cycle(k: usize) -> DependencyGraph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        DependencyGraph::from_edges(vec![int(1); k], &edges)
    }

    #[test]
    fn cycles_are_not_chordal() {
        assert!(is_chordal(&cycle(3)));
        for k in 4..=8 {
            assert!(!is_chordal(&cycle(k)), "C{k}");
            assert_eq!(min_cost_vertex_cover(&cycle(k)), Err(Error::NotChordal));
        }
        assert!(is_chordal(&DependencyGraph::empty(vec![])));
    }

    #[test]
    fn small_covers() {
        let edge = DependencyGraph::from_edges(vec![int(1), rat(4, 3)], &[(0, 1)]);
        assert_eq!(min_cost_vertex_cover(&edge).unwrap(), BTreeSet::from([0]));
        let tri = cycle(3);
        let cover = min_cost_vertex_cover(&tri).unwrap();
        assert_eq!(cover.len(), 2);
        assert!(tri.is_vertex_cover(&cover));
    }

    #[test]
    fn zero_weight_vertices_cover_for_free() {
        let star = DependencyGraph::from_edges(vec![int(0), int(1), int(1), int(1)], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(min_cost_vertex_cover(&star).unwrap(), BTreeSet::from([0]));
    }
}
