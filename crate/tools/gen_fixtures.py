#!/usr/bin/env python3
"""Generate exhaustive graph6 fixtures with networkx.

Writes one file per order:
  fixtures/connected/conn{n}.g6  all connected graphs up to isomorphism, 1 <= n <= 8
  fixtures/trees/trees{n}.g6     all free trees, 2 <= n <= 10

Orders up to 7 come from the graph atlas; order 8 is built by extending every
order-7 graph with one new vertex and deduplicating up to isomorphism.
"""
import os
from collections import defaultdict
from itertools import combinations

import networkx as nx

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def g6(g):
    return nx.to_graph6_bytes(nx.convert_node_labels_to_integers(g), header=False).decode().strip()


def write(path, graphs):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    lines = sorted(g6(g) for g in graphs)
    with open(path, "w") as f:
        for line in lines:
            f.write(line + "\n")
    print(path, len(lines))


def main():
    atlas = nx.graph_atlas_g()
    by_order = defaultdict(list)
    for g in atlas:
        by_order[g.number_of_nodes()].append(g)

    for n in range(1, 8):
        conn = [g for g in by_order[n] if nx.is_connected(g)]
        write(os.path.join(ROOT, "connected", f"conn{n}.g6"), conn)

    buckets = defaultdict(list)
    for base in by_order[7]:
        for r in range(1, 8):
            for nbrs in combinations(range(7), r):
                g = nx.Graph(base)
                g.add_node(7)
                g.add_edges_from((7, v) for v in nbrs)
                if not nx.is_connected(g):
                    continue
                key = (tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g, iterations=3))
                bucket = buckets[key]
                if not any(nx.is_isomorphic(g, h) for h in bucket):
                    bucket.append(g)
    conn8 = [g for b in buckets.values() for g in b]
    write(os.path.join(ROOT, "connected", "conn8.g6"), conn8)

    for n in range(2, 11):
        write(os.path.join(ROOT, "trees", f"trees{n}.g6"), nx.nonisomorphic_trees(n))


if __name__ == "__main__":
    main()
