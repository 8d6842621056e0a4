//! Immutable undirected simple graphs on at most 64 vertices.
//!
//! Vertices are the dense labels `0..n`. Adjacency is stored as one `u64`
//! row per vertex, so vertex subsets are plain bitmasks ([`VertexSet`]) and
//! connectivity checks on induced subgraphs are a handful of word operations.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported graph order.
pub const MAX_VERTICES: usize = 64;

/// A subset of `0..64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// Partition of a vertex subset into the connected pieces of the subgraph
/// it induces. Pieces are sorted by their smallest label and each piece is
/// listed in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentView {
    pub components: Vec<Vec<usize>>,
}

impl ComponentView {
    pub fn orders(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.components.iter().map(|c| c.iter().copied().collect())
    }
}

/// Undirected simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from unordered pairs. Repeated pairs collapse to one
    /// edge; loops are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges: Vec<_> = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Graph::from_edge_list(a + b, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Validates a list of labels as a vertex set of this graph.
    pub fn vertex_set(&self, members: &[usize]) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for &v in members {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if s.contains(v) {
                return Err(Error::DuplicateVertex(v));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// Vertices reachable from `start` inside `within` (including `start`).
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let allowed = within.bits();
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet::from_bits(seen)
    }

    /// Whether the subgraph induced by `within` is connected. The empty set
    /// counts as connected.
    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.min() {
            None => true,
            Some(v) => self.reach_within(v, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    /// Number of connected pieces of the subgraph induced by `within`.
    pub fn count_components(&self, within: VertexSet) -> usize {
        let mut left = within;
        let mut count = 0;
        while let Some(v) = left.min() {
            left = left.difference(self.reach_within(v, left));
            count += 1;
        }
        count
    }

    /// Connected pieces of the subgraph induced by `within`.
    pub fn components(&self, within: VertexSet) -> Result<ComponentView> {
        self.check_set(within)?;
        let mut left = within;
        let mut components = Vec::new();
        while let Some(v) = left.min() {
            let piece = self.reach_within(v, left);
            components.push(piece.to_vec());
            left = left.difference(piece);
        }
        Ok(ComponentView { components })
    }

    /// Induced subgraph on `s`, relabeled to `0..|s|` in ascending order of
    /// the original labels. The returned map sends new labels to old.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut adj = vec![0u64; map.len()];
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1u64 << j;
                }
            }
        }
        Ok((Graph { n: map.len(), adj }, map))
    }

    /// `|E_G[v, C]|`: number of edges joining `v` to members of `c`.
    pub fn edges_between(&self, v: usize, c: &[usize]) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let set = self.vertex_set(c)?;
        if set.contains(v) {
            return Err(Error::VertexInList(v));
        }
        Ok(self.neighbors(v).intersection(set).len())
    }

    /// Same graph with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u] &= !(1u64 << v);
        g.adj[v] &= !(1u64 << u);
        g
    }

    /// Vertices of degree one.
    pub fn leaf_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 1).count()
    }
}
