//! Cut vertices, blocks, vertex connectivity and 2-vertex cuts.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Structural summary consumed by the characterizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityProfile {
    /// Vertex connectivity; `n - 1` for complete graphs, 0 when disconnected
    /// or trivial.
    pub kappa: usize,
    pub cut_vertices: Vec<usize>,
    /// Vertex sets of the blocks, each ascending, sorted lexicographically.
    /// Isolated vertices form singleton blocks.
    pub blocks: Vec<Vec<usize>>,
    pub leaf_count: usize,
    pub is_connected: bool,
}

pub fn profile(g: &Graph) -> ConnectivityProfile {
    let (cut_vertices, blocks) = blocks_and_cut_vertices(g);
    ConnectivityProfile {
        kappa: vertex_connectivity(g),
        cut_vertices,
        blocks,
        leaf_count: g.leaf_count(),
        is_connected: g.is_connected(),
    }
}

/// Articulation points of `g` (ascending).
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    blocks_and_cut_vertices(g).0
}

struct Lowpoint<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    cut: VertexSet,
    blocks: Vec<Vec<usize>>,
}

impl Lowpoint<'_> {
    fn dfs(&mut self, v: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for w in self.g.neighbors(v).iter() {
            if self.disc[w] == 0 {
                children += 1;
                self.edge_stack.push((v, w));
                self.dfs(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent.is_some() || children > 1 {
                        self.cut.insert(v);
                    }
                    self.pop_block(v, w);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[v] {
                self.edge_stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        // a lone root must still close its block even without a tree edge
        if parent.is_none() && children == 0 {
            self.blocks.push(vec![v]);
        }
    }

    fn pop_block(&mut self, v: usize, w: usize) {
        let mut block = VertexSet::EMPTY;
        while let Some((a, b)) = self.edge_stack.pop() {
            block.insert(a);
            block.insert(b);
            if (a, b) == (v, w) {
                break;
            }
        }
        self.blocks.push(block.to_vec());
    }
}

/// Cut vertices and block vertex sets via the depth-first lowpoint
/// decomposition.
pub fn blocks_and_cut_vertices(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.order();
    let mut state = Lowpoint {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        edge_stack: Vec::new(),
        cut: VertexSet::EMPTY,
        blocks: Vec::new(),
    };
    for v in 0..n {
        if state.disc[v] == 0 {
            state.dfs(v, None);
        }
    }
    let mut blocks = state.blocks;
    blocks.sort();
    (state.cut.to_vec(), blocks)
}

/// Unit-capacity max-flow on the vertex-split digraph: the maximum number
/// of internally vertex-disjoint `s`-`t` paths, for non-adjacent `s != t`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.order();
    // node 2v is v_in, 2v+1 is v_out
    let nodes = 2 * n;
    let big = n as i32 + 1;
    let mut cap = vec![0i32; nodes * nodes];
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        cap[2 * v * nodes + 2 * v + 1] = c;
        for w in g.neighbors(v).iter() {
            cap[(2 * v + 1) * nodes + 2 * w] = big;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; nodes];
    loop {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..nodes {
                if prev[b] == usize::MAX && cap[a * nodes + b] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut b = sink;
        while b != source {
            let a = prev[b];
            cap[a * nodes + b] -= 1;
            cap[b * nodes + a] += 1;
            b = a;
        }
        flow += 1;
    }
}

/// κ(G): the fewest vertices whose removal disconnects `g` or leaves a
/// single vertex.
///
/// Scans vertices in label order and, for each `v_i` with `i <= κ` found so
/// far, takes the minimum local connectivity to every later non-neighbour.
/// A minimum separator misses at least one of the first `κ + 1` vertices, so
/// some scanned pair straddles it.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let mut best = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j));
            }
        }
        i += 1;
    }
    best
}

/// `n > k` and κ(G) ≥ k.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    g.order() > k && vertex_connectivity(g) >= k
}

/// Whether deleting `removed` leaves a disconnected graph.
pub fn separates(g: &Graph, removed: VertexSet) -> bool {
    g.count_components(g.vertices().difference(removed)) >= 2
}

/// Every unordered pair whose deletion disconnects `g`, in lexicographic
/// order. Pairs containing a cut vertex are included.
pub fn two_cuts(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(separating_pairs(g))
}

pub(crate) fn separating_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if separates(g, VertexSet::singleton(x).with(y)) {
                out.push((x, y));
            }
        }
    }
    out
}
