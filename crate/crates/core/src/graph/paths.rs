use std::collections::VecDeque;

use super::DependencyGraph;
use crate::error::{Error, Result};
use crate::interval::UncertainInterval;

/// BFS distances and parents from `start`.
fn bfs(g: &DependencyGraph, start: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = g.n();
    let mut dist = vec![None; n];
    let mut parent = vec![None; n];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0);
        for &v in &g.adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn farthest(component: &[usize], dist: &[Option<usize>]) -> usize {
    // Components are sorted, so the first maximum has the smallest index.
    let mut best = component[0];
    for &v in component {
        if dist[v] > dist[best] {
            best = v;
        }
    }
    best
}

/// A longest path of a tree component via double BFS.
///
/// The first BFS starts at the smallest vertex; farthest ties go to the smallest index. The
/// path is oriented so that the endpoint whose interval has the smaller `(lo, index)` comes first.
pub fn longest_path_caterpillar(
    g: &DependencyGraph,
    component: &[usize],
    intervals: &[UncertainInterval],
) -> Result<Vec<usize>> {
    let mut comp = component.to_vec();
    comp.sort_unstable();
    let Some(&root) = comp.first() else {
        return Ok(Vec::new());
    };
    let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    if edges + 1 != comp.len() {
        return Err(Error::NotTree(root));
    }
    let (dist, _) = bfs(g, root);
    if comp.iter().any(|&v| dist[v].is_none()) {
        return Err(Error::NotTree(root));
    }
    let s = farthest(&comp, &dist);
    let (dist, parent) = bfs(g, s);
    let t = farthest(&comp, &dist);
    let mut path = vec![t];
    while let Some(p) = parent[*path.last().expect("nonempty")] {
        path.push(p);
    }
    let key = |v: usize| (&intervals[v].lo, v);
    if key(path[path.len() - 1]) < key(path[0]) {
        path.reverse();
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn ivs(raw: &[(i64, i64)]) -> Vec<UncertainInterval> {
        raw.iter()
            .map(|&(a, b)| UncertainInterval::new(int(a), int(b), int(1)).unwrap())
            .collect()
    }

    #[test]
    fn path_starts_left() {
        let intervals = ivs(&[(7, 12), (3, 8), (0, 4)]);
        let g = DependencyGraph::from_edges(vec![int(1); 3], &[(0, 1), (1, 2)]);
        assert_eq!(
            longest_path_caterpillar(&g, &[0, 1, 2], &intervals).unwrap(),
            vec![2, 1, 0]
        );
    }

    #[test]
    fn star_and_edge() {
        let intervals = ivs(&[(0, 10), (1, 2), (3, 4), (5, 6)]);
        let g = DependencyGraph::from_edges(vec![int(1); 4], &[(0, 1), (0, 2), (0, 3)]);
        let p = longest_path_caterpillar(&g, &[0, 1, 2, 3], &intervals).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1], 0);
        let g = DependencyGraph::from_edges(vec![int(1); 2], &[(0, 1)]);
        let intervals = ivs(&[(4, 14), (0, 10)]);
        assert_eq!(longest_path_caterpillar(&g, &[0, 1], &intervals).unwrap(), vec![1, 0]);
    }

    #[test]
    fn cycle_is_rejected() {
        let intervals = ivs(&[(0, 9), (1, 9), (2, 9)]);
        let g = DependencyGraph::from_edges(vec![int(1); 3], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            longest_path_caterpillar(&g, &[0, 1, 2], &intervals),
            Err(Error::NotTree(0))
        );
    }
}
