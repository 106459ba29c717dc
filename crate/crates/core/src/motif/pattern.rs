use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{config, Error, Result};
use crate::graph::Graph;

pub const MIN_PATTERN_SIZE: usize = 3;
pub const MAX_PATTERN_SIZE: usize = 5;

/// A connected pattern graph on vertices `0..s`, `3 ≤ s ≤ 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    name: &'static str,
    s: usize,
    edges: Vec<(usize, usize)>,
    automorphisms: Vec<Vec<usize>>,
    /// Search order: every vertex after the first is adjacent to an earlier one.
    order: Vec<usize>,
    /// For position `i` of `order`, the earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
}

impl Pattern {
    /// Builds a pattern from its edge list; `s` is the largest index plus one.
    pub fn custom(edges: &[(usize, usize)]) -> Result<Self> {
        Self::build("custom", edges)
    }

    pub fn triangle() -> Self {
        Self::build("triangle", &[(0, 1), (0, 2), (1, 2)]).expect("valid pattern")
    }

    /// Path on three vertices.
    pub fn p3() -> Self {
        Self::build("p3", &[(0, 1), (1, 2)]).expect("valid pattern")
    }

    pub fn c4() -> Self {
        Self::build("c4", &[(0, 1), (1, 2), (2, 3), (0, 3)]).expect("valid pattern")
    }

    pub fn k4() -> Self {
        Self::build("k4", &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid pattern")
    }

    fn build(name: &'static str, raw: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw.len());
        for &(a, b) in raw {
            if a == b {
                return config(format!("pattern has a self-loop at {a}"));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        let s = edges.iter().map(|&(_, b)| b + 1).max().unwrap_or(0);
        if !(MIN_PATTERN_SIZE..=MAX_PATTERN_SIZE).contains(&s) {
            return config(format!(
                "pattern size must lie in {MIN_PATTERN_SIZE}..={MAX_PATTERN_SIZE}, got {s}"
            ));
        }
        let adjacent = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).is_ok();

        let mut order = vec![0];
        let mut seen = vec![false; s];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for y in 0..s {
                if !seen[y] && adjacent(x, y) {
                    seen[y] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
        if order.len() != s {
            return config("pattern must be connected");
        }
        let back = (0..s)
            .map(|i| (0..i).filter(|&j| adjacent(order[i], order[j])).collect())
            .collect();

        let automorphisms = (0..s)
            .permutations(s)
            .filter(|p| edges.iter().all(|&(a, b)| adjacent(p[a], p[b])))
            .collect();

        Ok(Pattern {
            name,
            s,
            edges,
            automorphisms,
            order,
            back,
        })
    }

    pub fn size(&self) -> usize {
        self.s
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len()
    }

    /// Calls `f` once per copy of the pattern in `g`, with the image of
    /// pattern vertex `i` at position `i` (internal indices of `g`) and the
    /// copy's edges in pattern edge order.
    ///
    /// Of the `|Aut|` embeddings onto a copy only the lexicographically least
    /// is reported.
    pub(crate) fn for_each_copy_index(&self, g: &Graph, f: &mut dyn FnMut(&[usize], &[(usize, usize)])) {
        let mut map = vec![usize::MAX; self.s];
        let mut edges = vec![(0, 0); self.edges.len()];
        for x in 0..g.vertex_count() {
            map[self.order[0]] = x;
            self.extend(g, 1, &mut map, &mut edges, f);
        }
    }

    fn extend(
        &self,
        g: &Graph,
        depth: usize,
        map: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(&[usize], &[(usize, usize)]),
    ) {
        if depth == self.s {
            if self.is_canonical(map) {
                for (slot, &(a, b)) in edges.iter_mut().zip(&self.edges) {
                    *slot = (map[a], map[b]);
                }
                f(map, edges);
            }
            return;
        }
        let back = &self.back[depth];
        let anchor = map[self.order[back[0]]];
        for &y in g.neighbor_indices(anchor) {
            let y = y as usize;
            if self.order[..depth].iter().any(|&p| map[p] == y) {
                continue;
            }
            let joined = back[1..].iter().all(|&j| {
                g.neighbor_indices(map[self.order[j]])
                    .binary_search(&(y as u32))
                    .is_ok()
            });
            if joined {
                map[self.order[depth]] = y;
                self.extend(g, depth + 1, map, edges, f);
            }
        }
        map[self.order[depth]] = usize::MAX;
    }

    fn is_canonical(&self, map: &[usize]) -> bool {
        self.automorphisms
            .iter()
            .all(|sigma| sigma.iter().map(|&i| map[i]).cmp(map.iter().copied()).is_ge())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.name != "custom" {
            return f.write_str(self.name);
        }
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "custom:{}", e.join(","))
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "triangle" => Ok(Pattern::triangle()),
            "p3" => Ok(Pattern::p3()),
            "c4" => Ok(Pattern::c4()),
            "k4" => Ok(Pattern::k4()),
            other => {
                let Some(list) = other.strip_prefix("custom:") else {
                    return config(format!("unknown pattern {other:?}"));
                };
                let mut edges = Vec::new();
                for pair in list.split(',').filter(|p| !p.trim().is_empty()) {
                    let parsed = pair
                        .split_once('-')
                        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
                    match parsed {
                        Some(e) => edges.push(e),
                        None => return config(format!("bad pattern edge {pair:?}")),
                    }
                }
                Pattern::custom(&edges)
            }
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        assert_eq!(Pattern::triangle().automorphism_count(), 6);
        assert_eq!(Pattern::p3().automorphism_count(), 2);
        assert_eq!(Pattern::c4().automorphism_count(), 8);
        assert_eq!(Pattern::k4().automorphism_count(), 24);
    }

    #[test]
    fn rejects_invalid() {
        assert!(Pattern::custom(&[(0, 1), (2, 3)]).is_err());
        assert!(Pattern::custom(&[(0, 1)]).is_err());
        assert!(Pattern::custom(&[(0, 0), (0, 1), (1, 2)]).is_err());
        assert!(Pattern::custom(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).is_err());
        assert!(Pattern::custom(&[(0, 2), (1, 2)]).is_ok());
    }

    #[test]
    fn string_round_trip() {
        for s in ["triangle", "p3", "c4", "k4", "custom:0-1,0-2,0-3,3-4"] {
            let p: Pattern = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("star".parse::<Pattern>().is_err());
        assert!("custom:0-1,x".parse::<Pattern>().is_err());
        let json = serde_json::to_string(&Pattern::c4()).unwrap();
        assert_eq!(json, "\"c4\"");
        assert_eq!(serde_json::from_str::<Pattern>(&json).unwrap(), Pattern::c4());
    }
}
