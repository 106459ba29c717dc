use std::collections::HashMap;

use super::{Edge, Graph, VertexId};

/// Union-find acyclicity check: true iff no edge closes a cycle.
pub fn is_forest<'a, I: IntoIterator<Item = &'a Edge>>(edges: I) -> bool {
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();

    fn find(parent: &mut HashMap<VertexId, VertexId>, x: VertexId) -> VertexId {
        let mut root = x;
        while let Some(&p) = parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        // path compression
        let mut cur = x;
        while cur != root {
            let next = parent[&cur];
            parent.insert(cur, root);
            cur = next;
        }
        root
    }

    let mut seen = std::collections::HashSet::new();
    for e in edges {
        if !seen.insert(*e) {
            continue;
        }
        let (a, b) = e.endpoints();
        parent.entry(a).or_insert(a);
        parent.entry(b).or_insert(b);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent.insert(ra, rb);
    }
    true
}

/// Exact number of simple cycles of length `l` (stopping once `cap` is
/// reached). Exponential in `l`; meant for small graphs.
pub fn count_cycles(g: &Graph, l: usize, cap: u64) -> u64 {
    assert!(l >= 3, "cycle length must be at least 3");
    let mut count = 0u64;
    let mut path = Vec::with_capacity(l);
    for start in 0..g.vertex_count() {
        path.clear();
        path.push(start);
        // Every cycle is rooted at its smallest index and walked in both
        // directions, hence the final halving.
        extend(g, l, start, &mut path, &mut count, cap.saturating_mul(2));
        if count >= cap.saturating_mul(2) {
            break;
        }
    }
    (count / 2).min(cap)
}

fn extend(g: &Graph, l: usize, start: usize, path: &mut Vec<usize>, count: &mut u64, limit: u64) {
    if *count >= limit {
        return;
    }
    let last = *path.last().unwrap();
    if path.len() == l {
        if g.neighbor_indices(last).binary_search(&(start as u32)).is_ok() {
            *count += 1;
        }
        return;
    }
    for &next in g.neighbor_indices(last) {
        let next = next as usize;
        if next <= start || path.contains(&next) {
            continue;
        }
        path.push(next);
        extend(g, l, start, path, count, limit);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_independent_triangles;
    use crate::graph::test_util::*;

    fn edges(pairs: &[(u64, u64)]) -> Vec<Edge> {
        pairs.iter().map(|&(a, b)| Edge::new(a, b).unwrap()).collect()
    }

    #[test]
    fn path_is_forest() {
        assert!(is_forest(&edges(&[(0, 1), (1, 2), (2, 3)])));
    }

    #[test]
    fn triangle_is_not_forest() {
        assert!(!is_forest(&edges(&[(0, 1), (1, 2), (2, 0)])));
    }

    #[test]
    fn independent_triangles_minus_one_edge_each() {
        let g = gen_independent_triangles(6);
        let kept: Vec<Edge> = g.edges().filter(|e| e.u() % 3 != 0 || e.v() % 3 != 1).collect();
        assert_eq!(kept.len(), 12);
        assert!(is_forest(&kept));
        assert!(!is_forest(&g.edges().collect::<Vec<_>>()));
    }

    #[test]
    fn complete_graph_cycles() {
        let k4 = complete(4);
        assert_eq!(count_cycles(&k4, 3, u64::MAX), 4);
        assert_eq!(count_cycles(&k4, 4, u64::MAX), 3);
        // K5: 5!/(2·5) = 12 five-cycles
        assert_eq!(count_cycles(&complete(5), 5, u64::MAX), 12);
    }

    #[test]
    fn no_four_cycles_in_disjoint_triangles() {
        assert_eq!(count_cycles(&gen_independent_triangles(6), 4, u64::MAX), 0);
    }

    #[test]
    fn cap_stops_early() {
        assert_eq!(count_cycles(&complete(6), 3, 5), 5);
    }
}
