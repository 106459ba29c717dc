use itertools::Itertools;

use super::{Graph, Triangle};

/// Degree-ordered triangle listing in `O(m^{3/2})`.
///
/// Every edge is oriented from lower to higher `(degree, index)` rank; a
/// triangle is reported from its lowest-ranked vertex by intersecting the
/// forward lists of that vertex and its middle neighbor.
pub(crate) fn for_each_triangle_index<F: FnMut(usize, usize, usize)>(g: &Graph, mut visit: F) {
    let n = g.vertex_count();
    let rank_less = |a: usize, b: usize| (g.degree_at(a), a) < (g.degree_at(b), b);

    let mut offsets = Vec::with_capacity(n + 1);
    let mut forward: Vec<u32> = Vec::with_capacity(g.edge_count());
    offsets.push(0);
    for i in 0..n {
        forward.extend(
            g.neighbor_indices(i)
                .iter()
                .copied()
                .filter(|&j| rank_less(i, j as usize)),
        );
        offsets.push(forward.len());
    }
    let fwd = |i: usize| &forward[offsets[i]..offsets[i + 1]];

    for u in 0..n {
        let fu = fwd(u);
        for &v in fu {
            let fv = fwd(v as usize);
            // Both lists are sorted by index, so a merge finds the common tail.
            let (mut a, mut b) = (0, 0);
            while a < fu.len() && b < fv.len() {
                match fu[a].cmp(&fv[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        visit(u, v as usize, fu[a] as usize);
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
}

/// Lists every triangle exactly once, sorted ascending.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for_each_triangle_index(g, |a, b, c| {
        out.push(Triangle::new(g.id_at(a), g.id_at(b), g.id_at(c)));
    });
    out.sort_unstable();
    out
}

pub fn triangle_count(g: &Graph) -> u64 {
    let mut count = 0u64;
    for_each_triangle_index(g, |_, _, _| count += 1);
    count
}

/// Cubic reference listing over all vertex triples. Only for small graphs.
pub fn brute_force_triangles(g: &Graph) -> Vec<Triangle> {
    g.vertices()
        .iter()
        .copied()
        .tuple_combinations()
        .filter(|&(a, b, c)| g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c))
        .map(|(a, b, c)| Triangle::new(a, b, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_util::*;
    use crate::graph::Edge;
    use proptest::prelude::*;

    #[test]
    fn k4_has_four_triangles() {
        let g = complete(4);
        let ts = enumerate_triangles(&g);
        assert_eq!(ts.len(), 4);
        assert_eq!(ts, brute_force_triangles(&g));
    }

    #[test]
    fn disjoint_triangles() {
        let g = graph(&[(0, 1), (1, 2), (0, 2), (10, 11), (11, 12), (10, 12), (12, 13)]);
        assert_eq!(
            enumerate_triangles(&g),
            vec![Triangle::new(0, 1, 2), Triangle::new(10, 11, 12)]
        );
    }

    #[test]
    fn path_has_none() {
        assert_eq!(triangle_count(&graph(&[(0, 1), (1, 2), (2, 3)])), 0);
    }

    fn arb_edges() -> impl Strategy<Value = Vec<(u64, u64)>> {
        prop::collection::vec((0u64..14, 0u64..14), 0..60)
    }

    proptest! {
        #[test]
        fn matches_brute_force(pairs in arb_edges()) {
            let g = Graph::from_edges(
                pairs.iter().filter(|(a, b)| a != b).map(|&(a, b)| Edge::new(a, b).unwrap()),
            );
            prop_assert_eq!(enumerate_triangles(&g), brute_force_triangles(&g));
        }

        #[test]
        fn insensitive_to_input_order(pairs in arb_edges(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut edges: Vec<Edge> = pairs
                .iter()
                .filter(|(a, b)| a != b)
                .map(|&(a, b)| Edge::new(a, b).unwrap())
                .collect();
            let before = enumerate_triangles(&Graph::from_edges(edges.clone()));
            edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(before, enumerate_triangles(&Graph::from_edges(edges)));
        }
    }
}
