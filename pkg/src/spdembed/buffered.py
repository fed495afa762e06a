"""Buffered diamondfolds and their shortest-path decompositions.

Every vertex ``x`` of the diamondfold X_k becomes a star: its center keeps
the id ``x`` and it gets one leaf per basic cycle through ``x``, joined by an
``eps`` edge. Each basic cycle becomes a unit 4-cycle on its own four
leaves, so no leaf lies on two basic cycles. Contracting the star edges
gives back X_k exactly.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import WeightedGraph, connected_components, dijkstra, induced_components
from .spd import SPD, build_spd

# clusters up to this size try every endpoint pair, larger ones only star centers
ALL_PAIRS_MAX = 60
MAX_BUFFERED_K = 3


def buffer_graph(base, eps: float):
    """Return ``(graph, cycles, centers)`` for a diamondfold ``base``.

    Leaves are numbered after the centers, cycle by cycle, in the order of
    each cycle's corners.
    """
    n0 = base.graph.n
    edges, cycles = [], []
    nid = n0
    for cyc in base.basic_cycles:
        leaves = list(range(nid, nid + 4))
        nid += 4
        edges += [(x, leaf, eps) for x, leaf in zip(cyc, leaves)]
        edges += [(leaves[j], leaves[(j + 1) % 4], 1.0) for j in range(4)]
        cycles.append(tuple(leaves))
    return WeightedGraph(nid, edges), cycles, list(range(n0))


def contract_light_edges(graph: WeightedGraph, threshold: float):
    """Contract every edge lighter than ``threshold``.

    Returns ``(contracted, copy_map)``; contracted vertices are numbered by
    the smallest original vertex of each class and keep the unit edges.
    """
    heavy = [(u, v) for u, v, w in graph.edges if w >= threshold]
    light = WeightedGraph(graph.n, [(u, v, w) for u, v, w in graph.edges if w < threshold], check_connected=False)
    copy_map = np.empty(graph.n, dtype=np.int64)
    for cid, comp in enumerate(connected_components(light)):
        copy_map[comp] = cid
    pairs = {(min(copy_map[u], copy_map[v]), max(copy_map[u], copy_map[v])) for u, v in heavy}
    edges = [(int(a), int(b), 1.0) for a, b in sorted(pairs) if a != b]
    return WeightedGraph(int(copy_map.max()) + 1, edges), copy_map


def separator_path_chooser(centers):
    """Pick the shortest path that leaves the smallest largest component.

    Endpoints range over all vertices for small clusters and over star
    centers for large ones; ties prefer longer paths, then the first pair in
    vertex order.
    """
    center_set = set(centers)

    def choose(graph: WeightedGraph, X: tuple):
        if len(X) == 1:
            return [X[0]]
        pool = list(X) if len(X) <= ALL_PAIRS_MAX else [v for v in X if v in center_set]
        if len(pool) < 2:
            pool = list(X)
        best: Optional[tuple] = None
        for i, x in enumerate(pool):
            field = dijkstra(graph, [x], X)
            for y in pool[i + 1:]:
                p = field.path_to(y)
                on = set(p)
                rest = [v for v in X if v not in on]
                comps = induced_components(graph, rest) if rest else []
                key = (max((len(c) for c in comps), default=0), -len(p))
                if best is None or key < best[0]:
                    best = (key, p)
        return best[1]

    return choose


def buffered_spd(graph: WeightedGraph, centers) -> SPD:
    return build_spd(graph, separator_path_chooser(centers))
