#![allow(dead_code)]

use std::path::PathBuf;

use sdiam_core::{parse_graph6, Graph, SteinerResult, VertexSet};

pub const INF: u32 = u32::MAX;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read_lines(rel: &str) -> Vec<String> {
    std::fs::read_to_string(fixture(rel))
        .unwrap_or_else(|e| panic!("{rel}: {e}"))
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

pub fn connected(n: usize) -> Vec<(String, Graph)> {
    read_lines(&format!("connected/conn{n}.g6"))
        .into_iter()
        .map(|l| {
            let g = parse_graph6(&l).unwrap();
            (l, g)
        })
        .collect()
}

pub fn trees(n: usize) -> Vec<(String, Graph)> {
    read_lines(&format!("trees/trees{n}.g6"))
        .into_iter()
        .map(|l| {
            let g = parse_graph6(&l).unwrap();
            (l, g)
        })
        .collect()
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Union-find over the edge list restricted to `mask`.
fn mask_connected(n: usize, edges: &[(usize, usize)], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        if mask >> u & 1 == 1 && mask >> v & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let first = mask.trailing_zeros() as usize;
    let root = find(&mut parent, first);
    (0..n).filter(|&v| mask >> v & 1 == 1).all(|v| find(&mut parent, v) == root)
}

/// `d(S)` for every vertex mask `S`: the fewest vertices of a connected
/// induced subgraph containing `S`, minus one. Superset minimum over all
/// connected masks.
pub fn all_distances(g: &Graph) -> Vec<u32> {
    let n = g.order();
    assert!(n <= 20);
    let edges = g.edges();
    let full = 1usize << n;
    let mut d = vec![INF; full];
    for mask in 1..full {
        if mask_connected(n, &edges, mask as u64) {
            d[mask] = (mask as u64).count_ones() - 1;
        }
    }
    for bit in 0..n {
        for mask in 0..full {
            if mask >> bit & 1 == 0 {
                d[mask] = d[mask].min(d[mask | 1 << bit]);
            }
        }
    }
    d
}

/// `sdiam_k` for every `k` in `0..=n` from an [`all_distances`] table.
pub fn sdiams(n: usize, table: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; n + 1];
    for (mask, &d) in table.iter().enumerate() {
        let k = mask.count_ones() as usize;
        if k >= 1 {
            out[k] = out[k].max(d);
        }
    }
    out
}

/// Tree check written against the raw edge list: edges of `g`, no repeats,
/// connected and acyclic on its vertex set, covers `s`, size = distance,
/// Steiner points = tree vertices outside `s`.
pub fn tree_ok(g: &Graph, s: VertexSet, r: &SteinerResult) -> bool {
    let Some(d) = r.distance.finite() else {
        return r.witness_edges.is_empty();
    };
    if r.witness_edges.len() != d {
        return false;
    }
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut verts = s.to_vec();
    for &(u, v) in &r.witness_edges {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return false;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false; // cycle or repeated edge
        }
        parent[a] = b;
        verts.push(u);
        verts.push(v);
    }
    verts.sort_unstable();
    verts.dedup();
    let root = find(&mut parent, verts[0]);
    let spanning = verts.iter().all(|&v| find(&mut parent, v) == root);
    let points: Vec<usize> = verts.iter().copied().filter(|&v| !s.contains(v)).collect();
    spanning && verts.len() == d + 1 && points == r.steiner_points
}

/// Fewest edges over every edge subset whose graph connects `s`.
pub fn edge_subset_distance(g: &Graph, s: &[usize]) -> Option<usize> {
    let edges = g.edges();
    let n = g.order();
    assert!(edges.len() <= 20);
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << edges.len() {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, s[0]);
        if s.iter().all(|&v| find(&mut parent, v) == root) {
            best = Some(size);
        }
    }
    best
}

/// Vertex connectivity by trying every deletion set.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.order();
    if n <= 1 {
        return 0;
    }
    let edges = g.edges();
    let all = (1u64 << n) - 1;
    let mut best = n - 1;
    for del in 0u64..1 << n {
        let k = del.count_ones() as usize;
        if k < best && k + 2 <= n && !mask_connected(n, &edges, all & !del) {
            best = k;
        }
    }
    best
}

/// Vertices whose deletion disconnects a connected `g`.
pub fn brute_cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let edges = g.edges();
    let all = (1u64 << n) - 1;
    (0..n)
        .filter(|&v| n > 2 && !mask_connected(n, &edges, all & !(1 << v)))
        .collect()
}
