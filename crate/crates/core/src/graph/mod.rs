//! Dependency graphs and the chordal machinery used by the algorithms.

mod chordal;
mod cott;
mod paths;

use std::collections::BTreeSet;

pub use chordal::{
    is_chordal, max_weight_independent_set, mcs_elimination_order, min_cost_vertex_cover,
    min_cost_vertex_cover_in_order, peo_min_right, verify_elimination_order,
};
pub use cott::{cott_to_instance, instance_to_cott, CoTTFunctions};
pub use paths::longest_path_caterpillar;

use crate::instance::Instance;
use crate::interval::{dependent, UncertainInterval};
use crate::knowledge::KnowledgeState;
use crate::scalar::Scalar;

/// Vertices are intervals, edges are dependent pairs, weights are query costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    pub adj: Vec<BTreeSet<usize>>,
    pub weights: Vec<Scalar>,
}

impl DependencyGraph {
    pub fn empty(weights: Vec<Scalar>) -> Self {
        Self {
            adj: vec![BTreeSet::new(); weights.len()],
            weights,
        }
    }

    pub fn from_edges(weights: Vec<Scalar>, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(weights);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop on {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(BTreeSet::is_empty)
    }

    /// Connected components (isolated vertices included), each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                k += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced on `keep`; other vertices stay present but isolated.
    pub fn induced(&self, keep: &[bool]) -> DependencyGraph {
        let mut g = Self::empty(self.weights.clone());
        for (u, v) in self.edges() {
            if keep[u] && keep[v] {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn is_vertex_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.edges().iter().all(|(u, v)| cover.contains(u) || cover.contains(v))
    }

    pub fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Scalar {
        set.into_iter()
            .fold(crate::scalar::zero(), |acc, &v| acc + &self.weights[v])
    }

    /// Lexicographically smallest triangle.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n() {
            for &y in self.adj[x].range(x + 1..) {
                if let Some(&z) = self.adj[y].range(y + 1..).find(|z| self.adj[x].contains(z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }
}

/// Dependency graph of a list of intervals at threshold `delta`.
pub fn build_graph(intervals: &[UncertainInterval], delta: &Scalar) -> DependencyGraph {
    let mut g = DependencyGraph::empty(intervals.iter().map(|iv| iv.cost.clone()).collect());
    for i in 0..intervals.len() {
        for j in i + 1..intervals.len() {
            if dependent(&intervals[i], &intervals[j], delta) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn instance_graph(inst: &Instance) -> DependencyGraph {
    build_graph(&inst.intervals, &inst.delta)
}

/// Graph of the current knowledge, weighted by original costs.
pub fn state_graph(state: &KnowledgeState) -> DependencyGraph {
    let mut g = build_graph(&state.current, &state.delta);
    g.weights = state.original.iter().map(|iv| iv.cost.clone()).collect();
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn unit(n: usize) -> Vec<Scalar> {
        vec![int(1); n]
    }

    #[test]
    fn three_interval_edges() {
        let inst = Instance::from_pairs(int(0), &[(int(2), int(7)), (int(0), int(4)), (int(5), int(9))], None).unwrap();
        assert_eq!(instance_graph(&inst).edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn points_have_no_edges() {
        let ivs: Vec<_> = (0..4).map(|k| UncertainInterval::point(int(k % 2), int(1))).collect();
        assert!(build_graph(&ivs, &int(0)).is_edgeless());
    }

    #[test]
    fn triangles() {
        let tri = DependencyGraph::from_edges(unit(3), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(tri.find_triangle(), Some((0, 1, 2)));
        let path = DependencyGraph::from_edges(unit(4), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.find_triangle(), None);
    }

    #[test]
    fn components_sorted() {
        let g = DependencyGraph::from_edges(unit(5), &[(3, 1), (4, 2)]);
        assert_eq!(g.components(), vec![vec![0], vec![1, 3], vec![2, 4]]);
    }
}
