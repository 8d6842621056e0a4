//! Exact Steiner distance and the invariants built on it.
//!
//! `d_G(S)` is the fewest edges in a connected subgraph of `G` containing
//! every vertex of `S`. Two independent engines compute it:
//!
//! * [`Engine::Complement`] tries Steiner-point sets `X ⊆ V \ S` in order of
//!   increasing size and stops at the first one for which `G[S ∪ X]` is
//!   connected. Any connected subgraph on `S ∪ X` contains a spanning tree
//!   with `|S| + |X| - 1` edges, and a Steiner tree on vertex set `S ∪ X`
//!   has exactly that many, so the first hit is optimal (see
//!   [`tree_size_from_vertex_count`]).
//! * [`Engine::TerminalDp`] is the Dreyfus–Wagner dynamic program over
//!   (terminal subset, vertex) states with unit edge weights.
//!
//! Cost is exponential in `n - |S|` for the first and in `|S|` for the
//! second, so [`Engine::Auto`] picks by the size of the complement.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A Steiner distance: a finite edge count, or `Infinite` when no component
/// holds all terminals. `Infinite` orders above every finite value and has
/// no arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Distance::Finite(v as usize)),
            Raw::Text(t) if t == "inf" => Ok(Distance::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad distance {t:?}"))),
        }
    }
}

/// Edges of a tree whose vertex set has `vertices` members.
///
/// This is the identity the complement engine rests on: a minimum
/// `S`-Steiner tree is determined by its vertex set `S ∪ X`, and its size is
/// `|S| + |X| - 1`.
pub const fn tree_size_from_vertex_count(vertices: usize) -> usize {
    vertices - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerResult {
    pub distance: Distance,
    /// Non-terminal vertices of the witness tree, ascending.
    pub steiner_points: Vec<usize>,
    /// Witness tree edges `(u, v)` with `u < v`, sorted.
    pub witness_edges: Vec<(usize, usize)>,
}

impl SteinerResult {
    fn infinite() -> Self {
        SteinerResult {
            distance: Distance::Infinite,
            steiner_points: Vec::new(),
            witness_edges: Vec::new(),
        }
    }

    /// Checks that the witness is a tree of `g` covering `s` with exactly
    /// `distance` edges, and that the Steiner points are the non-terminal
    /// tree vertices.
    pub fn verify(&self, g: &Graph, s: VertexSet) -> bool {
        let Some(d) = self.distance.finite() else {
            return self.witness_edges.is_empty() && self.steiner_points.is_empty();
        };
        if self.witness_edges.len() != d {
            return false;
        }
        let mut verts = s;
        let mut tree = match Graph::empty(g.order()) {
            Ok(t) => t,
            Err(_) => return false,
        };
        for &(u, v) in &self.witness_edges {
            if !g.has_edge(u, v) || tree.has_edge(u, v) {
                return false;
            }
            if tree.add_edge(u, v).is_err() {
                return false;
            }
            verts.insert(u);
            verts.insert(v);
        }
        let points: VertexSet = self.steiner_points.iter().copied().collect();
        // a connected graph on |V'| vertices with |V'| - 1 edges is a tree
        tree.is_connected_within(verts)
            && d == verts.len() - 1
            && points == verts.difference(s)
            && points.len() == self.steiner_points.len()
    }
}

/// Engine choice for [`steiner_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Auto,
    Complement,
    TerminalDp,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "complement" => Ok(Engine::Complement),
            "terminal-dp" | "dp" => Ok(Engine::TerminalDp),
            other => Err(Error::Config(format!("unknown engine {other:?}"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Auto => "auto",
            Engine::Complement => "complement",
            Engine::TerminalDp => "terminal-dp",
        })
    }
}

/// Engine selection thresholds and resource guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerConfig {
    pub engine: Engine,
    /// `Auto` uses the complement search when `n - |S|` is at most this.
    pub dp_threshold: usize,
    /// The complement search refuses `n - |S|` above this.
    pub complement_cap: usize,
    /// The dynamic program refuses more terminals than this.
    pub terminal_cap: usize,
}

impl Default for SteinerConfig {
    fn default() -> Self {
        SteinerConfig {
            engine: Engine::Auto,
            dp_threshold: 14,
            complement_cap: 20,
            terminal_cap: 16,
        }
    }
}

impl SteinerConfig {
    pub fn with_engine(engine: Engine) -> Self {
        SteinerConfig {
            engine,
            ..Self::default()
        }
    }

    /// The engine `Auto` resolves to for a terminal set of size `k` in a
    /// graph of order `n`.
    pub fn resolve(&self, n: usize, k: usize) -> Engine {
        match self.engine {
            Engine::Auto if n - k <= self.dp_threshold => Engine::Complement,
            Engine::Auto => Engine::TerminalDp,
            e => e,
        }
    }
}

/// `d_G(S)` with a witness tree, using the default configuration.
pub fn steiner_distance(g: &Graph, s: VertexSet) -> Result<SteinerResult> {
    steiner_distance_with(g, s, &SteinerConfig::default())
}

pub fn steiner_distance_with(g: &Graph, s: VertexSet, cfg: &SteinerConfig) -> Result<SteinerResult> {
    g.check_set(s)?;
    let Some(first) = s.min() else {
        return Err(Error::EmptySet);
    };
    let n = g.order();
    let engine = cfg.resolve(n, s.len());
    match engine {
        Engine::Complement if n - s.len() > cfg.complement_cap => {
            return Err(Error::ResourceGuard(format!(
                "complement search over {} non-terminals exceeds cap {}",
                n - s.len(),
                cfg.complement_cap
            )))
        }
        Engine::TerminalDp if s.len() > cfg.terminal_cap => {
            return Err(Error::ResourceGuard(format!(
                "terminal dynamic program over {} terminals exceeds cap {}",
                s.len(),
                cfg.terminal_cap
            )))
        }
        _ => {}
    }
    let reach = g.reach_within(first, g.vertices());
    if !s.is_subset(reach) {
        return Ok(SteinerResult::infinite());
    }
    let tree_vertices = match engine {
        Engine::TerminalDp => dp_vertices(g, s),
        _ => complement_vertices(g, s, reach),
    };
    Ok(witness(g, s, tree_vertices))
}

/// Distance only; skips witness construction.
pub fn steiner_distance_value(g: &Graph, s: VertexSet, cfg: &SteinerConfig) -> Result<Distance> {
    Ok(steiner_distance_with(g, s, cfg)?.distance)
}

/// Lexicographic `size`-subsets of `pool`, as masks.
pub(crate) struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(pool: Vec<usize>, size: usize) -> Self {
        let done = size > pool.len();
        Combinations {
            pool,
            idx: (0..size).collect(),
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.pool[i]).collect();
        let k = self.idx.len();
        let m = self.pool.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + m - k {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    Combinations::new((0..n).collect(), k)
}

fn complement_vertices(g: &Graph, s: VertexSet, reach: VertexSet) -> VertexSet {
    // optimal Steiner points lie in the component holding S
    let pool = reach.difference(s).to_vec();
    for size in 0..=pool.len() {
        for x in Combinations::new(pool.clone(), size) {
            let candidate = s.union(x);
            if g.is_connected_within(candidate) {
                return candidate;
            }
        }
    }
    unreachable!("the component containing S is connected")
}

fn bfs_from(g: &Graph, src: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).iter() {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                pred[w] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, pred)
}

#[derive(Clone, Copy)]
enum Step {
    Leaf,
    Merge(usize),
    Via(usize),
}

/// Vertex set of an optimal tree found by the Dreyfus–Wagner recurrence.
fn dp_vertices(g: &Graph, s: VertexSet) -> VertexSet {
    let n = g.order();
    let terms = s.to_vec();
    let k = terms.len();
    if k == 1 {
        return s;
    }
    let bfs: Vec<_> = (0..n).map(|v| bfs_from(g, v)).collect();
    let dist = |a: usize, b: usize| bfs[a].0[b];
    let inf = usize::MAX / 4;
    let full = (1usize << k) - 1;
    let mut merged = vec![inf; (full + 1) * n];
    let mut best = vec![inf; (full + 1) * n];
    let mut merge_step = vec![Step::Leaf; (full + 1) * n];
    let mut best_step = vec![Step::Leaf; (full + 1) * n];

    for (i, &t) in terms.iter().enumerate() {
        for v in 0..n {
            let d = dist(t, v);
            let d = if d == usize::MAX { inf } else { d };
            merged[(1 << i) * n + v] = d;
            best[(1 << i) * n + v] = d;
        }
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        for v in 0..n {
            let mut m = inf;
            let mut arg = Step::Leaf;
            // submasks containing the lowest terminal: each split once
            let rest = mask ^ low;
            let mut sub = rest;
            loop {
                let a = sub | low;
                if a != mask {
                    let val = best[a * n + v] + best[(mask ^ a) * n + v];
                    if val < m {
                        m = val;
                        arg = Step::Merge(a);
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            merged[mask * n + v] = m;
            merge_step[mask * n + v] = arg;
        }
        for v in 0..n {
            let mut b = merged[mask * n + v];
            let mut arg = Step::Leaf;
            for u in 0..n {
                let d = dist(u, v);
                if u != v && d != usize::MAX && merged[mask * n + u] + d < b {
                    b = merged[mask * n + u] + d;
                    arg = Step::Via(u);
                }
            }
            best[mask * n + v] = b;
            best_step[mask * n + v] = arg;
        }
    }

    let mut verts = s;
    let add_path = |verts: &mut VertexSet, from: usize, to: usize| {
        let pred = &bfs[from].1;
        let mut x = to;
        verts.insert(x);
        while x != from {
            x = pred[x];
            verts.insert(x);
        }
    };
    // explicit stack of (mask, vertex, use_best)
    let mut stack = vec![(full, terms[0], true)];
    while let Some((mask, v, use_best)) = stack.pop() {
        if use_best {
            match best_step[mask * n + v] {
                Step::Via(u) => {
                    add_path(&mut verts, u, v);
                    stack.push((mask, u, false));
                }
                _ => stack.push((mask, v, false)),
            }
        } else {
            match merge_step[mask * n + v] {
                Step::Merge(a) => {
                    stack.push((a, v, true));
                    stack.push((mask ^ a, v, true));
                }
                _ => {
                    debug_assert_eq!(mask.count_ones(), 1);
                    add_path(&mut verts, terms[mask.trailing_zeros() as usize], v);
                }
            }
        }
    }
    debug_assert_eq!(verts.len(), best[full * n + terms[0]] + 1);
    verts
}

/// Breadth-first spanning tree of `G[vertices]` rooted at its smallest
/// label.
fn witness(g: &Graph, s: VertexSet, vertices: VertexSet) -> SteinerResult {
    let root = vertices.min().expect("nonempty");
    let mut seen = VertexSet::singleton(root);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut edges = Vec::with_capacity(vertices.len());
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).intersection(vertices).difference(seen).iter() {
            seen.insert(w);
            edges.push((v.min(w), v.max(w)));
            queue.push_back(w);
        }
    }
    debug_assert_eq!(seen, vertices);
    edges.sort_unstable();
    SteinerResult {
        distance: Distance::Finite(tree_size_from_vertex_count(vertices.len())),
        steiner_points: vertices.difference(s).to_vec(),
        witness_edges: edges,
    }
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    let n = g.order();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, lo: 2, hi: n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Per-vertex Steiner k-eccentricities and everything derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EccentricityProfile {
    pub k: usize,
    pub per_vertex: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    pub center: Vec<usize>,
    /// Lexicographically smallest k-set attaining the diameter.
    pub diameter_witness: Vec<usize>,
    /// Sum of `d(S)` over k-sets `S` containing each vertex.
    pub totals: Vec<u64>,
    /// Sum of `d(S)` over all k-sets.
    pub grand_total: u64,
    pub set_count: u64,
}

/// Scans every k-set once and accumulates all per-vertex quantities.
pub fn eccentricity_profile_with(g: &Graph, k: usize, cfg: &SteinerConfig) -> Result<EccentricityProfile> {
    check_k(g, k)?;
    let n = g.order();
    let mut per_vertex = vec![0usize; n];
    let mut totals = vec![0u64; n];
    let mut grand_total = 0u64;
    let mut set_count = 0u64;
    let mut diameter = 0usize;
    let mut witness: Option<VertexSet> = None;
    for s in k_subsets(n, k) {
        let d = steiner_distance_value(g, s, cfg)?
            .finite()
            .expect("connected graph has finite Steiner distances");
        for v in s.iter() {
            per_vertex[v] = per_vertex[v].max(d);
            totals[v] += d as u64;
        }
        grand_total += d as u64;
        set_count += 1;
        if witness.is_none() || d > diameter {
            diameter = d;
            witness = Some(s);
        }
    }
    let radius = per_vertex.iter().copied().min().unwrap_or(0);
    let center = (0..n).filter(|&v| per_vertex[v] == radius).collect();
    Ok(EccentricityProfile {
        k,
        per_vertex,
        radius,
        diameter,
        center,
        diameter_witness: witness.map(VertexSet::to_vec).unwrap_or_default(),
        totals,
        grand_total,
        set_count,
    })
}

pub fn eccentricity_profile(g: &Graph, k: usize) -> Result<EccentricityProfile> {
    eccentricity_profile_with(g, k, &SteinerConfig::default())
}

/// `e_k(v)`: the largest `d(S)` over k-sets containing `v`.
pub fn steiner_eccentricity(g: &Graph, v: usize, k: usize) -> Result<usize> {
    check_k(g, k)?;
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
    }
    let cfg = SteinerConfig::default();
    let others: Vec<usize> = (0..g.order()).filter(|&w| w != v).collect();
    let mut best = 0;
    for rest in Combinations::new(others, k - 1) {
        let d = steiner_distance_value(g, rest.with(v), &cfg)?.finite().unwrap_or(0);
        best = best.max(d);
    }
    Ok(best)
}

/// `sdiam_k(G)` and the lexicographically smallest k-set attaining it.
pub fn steiner_diameter(g: &Graph, k: usize, cfg: &SteinerConfig) -> Result<(usize, VertexSet)> {
    check_k(g, k)?;
    let mut best: Option<(usize, VertexSet)> = None;
    for s in k_subsets(g.order(), k) {
        let d = steiner_distance_value(g, s, cfg)?.finite().unwrap_or(0);
        if best.map_or(true, |(b, _)| d > b) {
            best = Some((d, s));
        }
    }
    Ok(best.expect("at least one k-set"))
}

/// Vertices attaining the Steiner k-radius.
pub fn steiner_center(g: &Graph, k: usize) -> Result<Vec<usize>> {
    Ok(eccentricity_profile(g, k)?.center)
}

/// Vertices minimizing the total Steiner distance over the k-sets that
/// contain them.
pub fn steiner_median(g: &Graph, k: usize) -> Result<Vec<usize>> {
    let p = eccentricity_profile(g, k)?;
    let min = p.totals.iter().copied().min().unwrap_or(0);
    Ok((0..g.order()).filter(|&v| p.totals[v] == min).collect())
}

/// `μ_k(G)` as an exact fraction over `C(n, k)`.
pub fn average_steiner_distance(g: &Graph, k: usize) -> Result<Ratio<u64>> {
    let p = eccentricity_profile(g, k)?;
    Ok(Ratio::new(p.grand_total, p.set_count))
}
