//! Hard instances and lower-bound gadgets.
//!
//! Vertex ids follow fixed layouts (documented per generator) so tests can
//! name specific vertices. [`permute_vertices`] supplies the random relabeling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::hashing::{HashContext, HashLabel};

/// `D_{r,d}`: `r` disjoint copies of `d` disjoint edges `u_{2i}u_{2i+1}`, the
/// first of which is joined at both ends to `d` further vertices `v_i`.
///
/// Copy `c` uses ids `c·3d ..`: `u_j = c·3d + j` for `j < 2d`, then
/// `v_i = c·3d + 2d + i`.
pub fn gen_heavy_edges(r: u64, d: u64) -> Graph {
    let mut edges = Vec::with_capacity((3 * r * d) as usize);
    for c in 0..r {
        let base = c * 3 * d;
        for i in 0..d {
            edges.push(Edge::from_distinct(base + 2 * i, base + 2 * i + 1));
            let v = base + 2 * d + i;
            edges.push(Edge::from_distinct(base, v));
            edges.push(Edge::from_distinct(base + 1, v));
        }
    }
    Graph::from_edges(edges)
}

/// `H_{r,d}`: `r` disjoint hubs, each in `d` edge-disjoint triangles.
///
/// Copy `c` has hub `c(2d+1)` and spokes `s_j = c(2d+1) + 1 + j`; the
/// triangles are `(hub, s_{2i}, s_{2i+1})`.
pub fn gen_hubs(r: u64, d: u64) -> Graph {
    let mut edges = Vec::with_capacity((3 * r * d) as usize);
    for c in 0..r {
        let hub = c * (2 * d + 1);
        for i in 0..d {
            let (a, b) = (hub + 1 + 2 * i, hub + 2 + 2 * i);
            edges.push(Edge::from_distinct(hub, a));
            edges.push(Edge::from_distinct(hub, b));
            edges.push(Edge::from_distinct(a, b));
        }
    }
    Graph::from_edges(edges)
}

/// `I_n`: triangles `(3i, 3i+1, 3i+2)` for `i < n`.
pub fn gen_independent_triangles(n: u64) -> Graph {
    Graph::from_edges((0..n).flat_map(|i| {
        let b = 3 * i;
        [
            Edge::from_distinct(b, b + 1),
            Edge::from_distinct(b + 1, b + 2),
            Edge::from_distinct(b, b + 2),
        ]
    }))
}

/// `G(n, p)` on vertices `0..n`; pair `{i, j}` is present iff its seeded coin
/// lands below `p`. Isolated vertices are kept.
pub fn gen_gnp(n: u64, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return config(format!("edge probability must lie in [0, 1], got {p}"));
    }
    let ctx = HashContext::new(seed, HashLabel::Gnp);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = Edge::from_distinct(i, j);
            if ctx.coin(&e, p) {
                edges.push(e);
            }
        }
    }
    Ok(Graph::with_vertices(0..n, edges))
}

/// Splits `g` into monochromatic and bichromatic edges under `chi`. Both parts
/// keep every vertex of `g`.
pub fn split_by_coloring<F: Fn(VertexId) -> bool>(g: &Graph, chi: F) -> (Graph, Graph) {
    let (mono, di): (Vec<Edge>, Vec<Edge>) = g.edges().partition(|e| chi(e.u()) == chi(e.v()));
    let ids = g.vertices().iter().copied();
    (
        Graph::with_vertices(ids.clone(), mono),
        Graph::with_vertices(ids, di),
    )
}

/// [`split_by_coloring`] under a uniform seeded 2-coloring.
pub fn color_split(g: &Graph, seed: u64) -> (Graph, Graph) {
    let ctx = HashContext::new(seed, HashLabel::Coloring);
    split_by_coloring(g, |v| ctx.coin(&v, 0.5))
}

/// Exact distributions of the mono and di edge subsets over all `2^|V|`
/// colorings of `g`, as histograms keyed by the sorted edge list.
pub fn split_distributions(g: &Graph) -> (BTreeMap<Vec<Edge>, u64>, BTreeMap<Vec<Edge>, u64>) {
    let ids = g.vertices();
    assert!(ids.len() < 32, "exhaustive coloring needs fewer than 32 vertices");
    let (mut mono_h, mut di_h) = (BTreeMap::new(), BTreeMap::new());
    for mask in 0u32..(1 << ids.len()) {
        let chi = |v: VertexId| mask >> ids.binary_search(&v).unwrap() & 1 == 1;
        let (mono, di) = split_by_coloring(g, chi);
        *mono_h.entry(mono.edges().collect()).or_insert(0) += 1;
        *di_h.entry(di.edges().collect()).or_insert(0) += 1;
    }
    (mono_h, di_h)
}

/// Two edge sets meant to be streamed Alice first, then Bob.
#[derive(Clone, Debug)]
pub struct TwoPartyInstance {
    pub alice: Graph,
    pub bob: Graph,
    pub expected_triangles: u64,
}

impl TwoPartyInstance {
    pub fn stream(&self) -> Vec<Edge> {
        self.alice.edges().chain(self.bob.edges()).collect()
    }

    pub fn union(&self) -> Graph {
        Graph::from_edges(self.stream())
    }
}

/// Index gadget on `r` copies of `D_{1,d}` with `d = |w|`: Alice keeps pair
/// `i` iff `w[i]`, Bob attaches the `d` wedge vertices to pair `x`. Same
/// layout as [`gen_heavy_edges`].
pub fn gen_index_instance(w: &[bool], x: usize, r: u64) -> Result<TwoPartyInstance> {
    if x >= w.len() {
        return config(format!("index {x} out of range for a {}-bit string", w.len()));
    }
    let d = w.len() as u64;
    let (mut alice, mut bob) = (Vec::new(), Vec::new());
    for c in 0..r {
        let base = c * 3 * d;
        for (i, &bit) in w.iter().enumerate() {
            let i = i as u64;
            if bit {
                alice.push(Edge::from_distinct(base + 2 * i, base + 2 * i + 1));
            }
        }
        let (a, b) = (base + 2 * x as u64, base + 2 * x as u64 + 1);
        for i in 0..d {
            let v = base + 2 * d + i;
            bob.push(Edge::from_distinct(a, v));
            bob.push(Edge::from_distinct(b, v));
        }
    }
    Ok(TwoPartyInstance {
        alice: Graph::from_edges(alice),
        bob: Graph::from_edges(bob),
        expected_triangles: if w[x] { r * d } else { 0 },
    })
}

/// Boolean hidden matching gadget, `|x| = 2n`, `|w| = n`.
///
/// Copy `c` uses `a = c(4n+1)`, `b_i = a + 1 + i`, `c_i = a + 1 + 2n + i`.
/// Alice joins `a` to `b_i` when `x_i = 0` and to `c_i` otherwise. For the
/// `k`-th matched pair `(i, j)` Bob adds `b_i b_j, c_i c_j` when `w_k = 0` and
/// `b_i c_j, b_j c_i` when `w_k = 1`.
pub fn gen_bhm_instance(
    x: &[bool],
    matching: &[(usize, usize)],
    w: &[bool],
    r: u64,
) -> Result<TwoPartyInstance> {
    let n = w.len();
    if x.len() != 2 * n {
        return config(format!("x has {} bits, expected {}", x.len(), 2 * n));
    }
    validate_matching(matching, n)?;

    let (mut alice, mut bob) = (Vec::new(), Vec::new());
    let span = 4 * n as u64 + 1;
    for copy in 0..r {
        let a = copy * span;
        let b = |i: usize| a + 1 + i as u64;
        let c = |i: usize| a + 1 + 2 * n as u64 + i as u64;
        for (i, &bit) in x.iter().enumerate() {
            alice.push(Edge::from_distinct(a, if bit { c(i) } else { b(i) }));
        }
        for (&(i, j), &bit) in matching.iter().zip(w) {
            if bit {
                bob.push(Edge::from_distinct(b(i), c(j)));
                bob.push(Edge::from_distinct(b(j), c(i)));
            } else {
                bob.push(Edge::from_distinct(b(i), b(j)));
                bob.push(Edge::from_distinct(c(i), c(j)));
            }
        }
    }
    let hamming = matching
        .iter()
        .zip(w)
        .filter(|(&(i, j), &bit)| (x[i] ^ x[j]) != bit)
        .count() as u64;
    Ok(TwoPartyInstance {
        alice: Graph::from_edges(alice),
        bob: Graph::from_edges(bob),
        expected_triangles: r * (n as u64 - hamming),
    })
}

fn validate_matching(matching: &[(usize, usize)], n: usize) -> Result<()> {
    if matching.len() != n {
        return config(format!("matching has {} pairs, expected {n}", matching.len()));
    }
    let mut seen = vec![false; 2 * n];
    for &(i, j) in matching {
        for v in [i, j] {
            if v >= 2 * n {
                return config(format!("matching vertex {v} out of range 0..{}", 2 * n));
            }
            if std::mem::replace(&mut seen[v], true) {
                return config(format!("matching uses vertex {v} twice"));
            }
        }
    }
    Ok(())
}

/// A uniformly random perfect matching on `0..2n`.
pub fn random_perfect_matching(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order.chunks(2).map(|p| (p[0], p[1])).collect()
}

/// Seeded uniform permutation of the vertex ids of `g`, as a map.
pub fn vertex_permutation(ids: &[VertexId], seed: u64) -> HashMap<VertexId, VertexId> {
    let mut image = ids.to_vec();
    image.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ids.iter().copied().zip(image).collect()
}

/// Relabels `g` by a seeded uniform permutation of its own id set.
pub fn permute_vertices(g: &Graph, seed: u64) -> Graph {
    let map = vertex_permutation(g.vertices(), seed);
    g.relabel(|v| map[&v])
}

/// Instance families selectable from configs and the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceKind {
    HeavyEdges { r: u64, d: u64 },
    Hubs { r: u64, d: u64 },
    IndependentTriangles { n: u64 },
    Gnp { n: u64, p: f64 },
    Index { w: Vec<bool>, x: usize, r: u64 },
    Bhm { x: Vec<bool>, matching: Vec<(usize, usize)>, w: Vec<bool>, r: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub kind: InstanceKind,
    #[serde(default)]
    pub seed: u64,
    /// Apply [`permute_vertices`] with `seed`.
    #[serde(default)]
    pub permute: bool,
}

/// A generated graph plus the arrival order to stream it in.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub stream: Vec<Edge>,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, seed: u64) -> Self {
        InstanceSpec { kind, seed, permute: false }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: u64| {
            if v == 0 {
                config(format!("{name} must be positive"))
            } else {
                Ok(())
            }
        };
        match &self.kind {
            InstanceKind::HeavyEdges { r, d } | InstanceKind::Hubs { r, d } => {
                positive("r", *r)?;
                positive("d", *d)
            }
            InstanceKind::IndependentTriangles { n } => positive("n", *n),
            InstanceKind::Gnp { n, p } => {
                positive("n", *n)?;
                if !(*p > 0.0 && *p <= 1.0) {
                    return config(format!("p must lie in (0, 1], got {p}"));
                }
                Ok(())
            }
            InstanceKind::Index { w, x, r } => {
                positive("r", *r)?;
                if *x >= w.len() {
                    return config(format!("index {x} out of range for a {}-bit string", w.len()));
                }
                Ok(())
            }
            InstanceKind::Bhm { x, matching, w, r } => {
                positive("r", *r)?;
                if x.len() != 2 * w.len() {
                    return config("x must have twice as many bits as w");
                }
                validate_matching(matching, w.len())
            }
        }
    }

    pub fn build(&self) -> Result<Instance> {
        self.validate()?;
        let (graph, stream) = match &self.kind {
            InstanceKind::HeavyEdges { r, d } => single(gen_heavy_edges(*r, *d)),
            InstanceKind::Hubs { r, d } => single(gen_hubs(*r, *d)),
            InstanceKind::IndependentTriangles { n } => single(gen_independent_triangles(*n)),
            InstanceKind::Gnp { n, p } => single(gen_gnp(*n, *p, self.seed)?),
            InstanceKind::Index { w, x, r } => two_party(gen_index_instance(w, *x, *r)?),
            InstanceKind::Bhm { x, matching, w, r } => {
                two_party(gen_bhm_instance(x, matching, w, *r)?)
            }
        };
        if !self.permute {
            return Ok(Instance { graph, stream });
        }
        let map = vertex_permutation(graph.vertices(), self.seed);
        Ok(Instance {
            graph: graph.relabel(|v| map[&v]),
            stream: stream
                .iter()
                .map(|e| Edge::from_distinct(map[&e.u()], map[&e.v()]))
                .collect(),
        })
    }
}

fn single(g: Graph) -> (Graph, Vec<Edge>) {
    let stream = g.edges().collect();
    (g, stream)
}

fn two_party(inst: TwoPartyInstance) -> (Graph, Vec<Edge>) {
    let stream = inst.stream();
    (Graph::from_edges(stream.iter().copied()), stream)
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => config(format!("invalid bit {ch:?} in {s:?}")),
        })
        .collect()
}

/// Short form used on the command line, e.g. `hubs:r=1,d=4`,
/// `gnp:n=60,p=0.2`, `index:w=1010,x=0,r=1`,
/// `bhm:x=0011,matching=0-1/2-3,w=00,r=1`.
impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::HeavyEdges { r, d } => write!(f, "heavy:r={r},d={d}"),
            InstanceKind::Hubs { r, d } => write!(f, "hubs:r={r},d={d}"),
            InstanceKind::IndependentTriangles { n } => write!(f, "independent:n={n}"),
            InstanceKind::Gnp { n, p } => write!(f, "gnp:n={n},p={p}"),
            InstanceKind::Index { w, x, r } => {
                write!(f, "index:w={},x={x},r={r}", bits_to_string(w))
            }
            InstanceKind::Bhm { x, matching, w, r } => {
                let m: Vec<String> = matching.iter().map(|(i, j)| format!("{i}-{j}")).collect();
                write!(
                    f,
                    "bhm:x={},matching={},w={},r={r}",
                    bits_to_string(x),
                    m.join("/"),
                    bits_to_string(w)
                )
            }
        }
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: HashMap<&str, &str> = HashMap::new();
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got {kv:?}")))?;
            params.insert(k.trim(), v.trim());
        }
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| Error::Config(format!("{name}: missing parameter {key:?}")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Config(format!("{name}: {key} must be a non-negative integer")))
        };
        let kind = match name {
            "heavy" | "heavy-edges" => InstanceKind::HeavyEdges { r: num("r")?, d: num("d")? },
            "hubs" => InstanceKind::Hubs { r: num("r")?, d: num("d")? },
            "independent" | "triangles" => InstanceKind::IndependentTriangles { n: num("n")? },
            "gnp" => InstanceKind::Gnp {
                n: num("n")?,
                p: get("p")?
                    .parse()
                    .map_err(|_| Error::Config(format!("gnp: p must be a number")))?,
            },
            "index" => InstanceKind::Index {
                w: parse_bits(get("w")?)?,
                x: num("x")? as usize,
                r: num("r")?,
            },
            "bhm" => {
                let matching = get("matching")?
                    .split('/')
                    .map(|pair| {
                        let parsed = pair
                            .split_once('-')
                            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
                        parsed.ok_or_else(|| Error::Config(format!("bhm: bad matching pair {pair:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                InstanceKind::Bhm {
                    x: parse_bits(get("x")?)?,
                    matching,
                    w: parse_bits(get("w")?)?,
                    r: num("r")?,
                }
            }
            other => return config(format!("unknown instance kind {other:?}")),
        };
        if let Some(extra) = params.keys().find(|k| !kind.accepts(k)) {
            return config(format!("{name}: unknown parameter {extra:?}"));
        }
        Ok(kind)
    }
}

impl InstanceKind {
    fn accepts(&self, key: &str) -> bool {
        let keys: &[&str] = match self {
            InstanceKind::HeavyEdges { .. } | InstanceKind::Hubs { .. } => &["r", "d"],
            InstanceKind::IndependentTriangles { .. } => &["n"],
            InstanceKind::Gnp { .. } => &["n", "p"],
            InstanceKind::Index { .. } => &["w", "x", "r"],
            InstanceKind::Bhm { .. } => &["x", "matching", "w", "r"],
        };
        keys.contains(&key)
    }
}
