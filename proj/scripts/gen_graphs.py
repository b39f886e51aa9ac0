#!/usr/bin/env python3
"""Write data/graphs/conn{1..8}.g6: every connected simple graph, one per line.

Orders up to 7 come from the networkx graph atlas. Order 8 is built by adding
a vertex to each connected 7-vertex graph in every possible way and removing
isomorphic copies (Weisfeiler-Lehman hash buckets, then VF2).
"""

import argparse
import pathlib

import networkx as nx


def atlas_connected(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and (n == 0 or nx.is_connected(g))]


def extend(graphs):
    n = graphs[0].number_of_nodes()
    buckets = {}
    out = []
    for g in graphs:
        for mask in range(1, 1 << n):
            h = g.copy()
            h.add_node(n)
            h.add_edges_from((n, v) for v in range(n) if mask >> v & 1)
            key = (h.number_of_edges(), tuple(sorted(d for _, d in h.degree())),
                   nx.weisfeiler_lehman_graph_hash(h, iterations=3))
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, o) for o in bucket):
                continue
            bucket.append(h)
            out.append(h)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "graphs"))
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    levels = {n: atlas_connected(n) for n in range(1, min(args.max_n, 7) + 1)}
    if args.max_n >= 8:
        levels[8] = extend(levels[7])
    for n, gs in levels.items():
        lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in gs)
        (out / f"conn{n}.g6").write_text("".join(line + "\n" for line in lines))
        print(f"n={n}: {len(lines)} graphs")


if __name__ == "__main__":
    main()
