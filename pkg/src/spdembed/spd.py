"""Shortest path decompositions and path decompositions.

An SPD is a leveled hierarchy of clusters. Level 1 is the whole vertex set;
every cluster ``X`` carries a path ``P_X`` that is a shortest path of the
induced graph ``G[X]`` and the clusters of the next level are exactly the
connected components of ``G[X - P_X]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .graph import GraphError, WeightedGraph, dijkstra, induced_components

TOL = 1e-9
PATHWIDTH_MAX_N = 20


class SPDValidationError(ValueError):
    """Raised with the full list of violations found by a validator."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Cluster:
    id: int
    level: int
    vertices: tuple
    path: tuple
    parent: Optional[int]

    @property
    def root(self) -> int:
        return self.path[0]


class SPD:
    def __init__(self, n: int, clusters: Sequence[Cluster]):
        self.n = n
        self.clusters = list(clusters)

    @property
    def depth(self) -> int:
        return max((c.level for c in self.clusters), default=0)

    @property
    def levels(self) -> list[list[Cluster]]:
        out = [[] for _ in range(self.depth)]
        for c in self.clusters:
            out[c.level - 1].append(c)
        return out

    def children(self, cluster_id: int) -> list[Cluster]:
        return [c for c in self.clusters if c.parent == cluster_id]

    def paths(self) -> list[tuple]:
        return [c.path for c in self.clusters]

    def to_json(self) -> str:
        levels = []
        for lv in self.levels:
            levels.append([
                {"id": c.id, "vertices": list(c.vertices), "path": list(c.path), "root": c.root, "parent": c.parent}
                for c in lv
            ])
        return json.dumps({"n": self.n, "depth": self.depth, "levels": levels})

    @classmethod
    def from_json(cls, text: str) -> "SPD":
        data = json.loads(text)
        clusters = []
        for i, lv in enumerate(data["levels"], start=1):
            for c in lv:
                path = tuple(c["path"])
                if "root" in c and path and c["root"] != path[0]:
                    path = path[::-1]
                clusters.append(Cluster(c["id"], i, tuple(sorted(c["vertices"])), path, c.get("parent")))
        return cls(data["n"], clusters)

    def __repr__(self) -> str:
        return f"SPD(n={self.n}, depth={self.depth}, clusters={len(self.clusters)})"


# ----------------------------------------------------------------------------
# validation


def validate_spd(graph: WeightedGraph, spd: SPD, tol: float = TOL) -> int:
    """Check every structural requirement and return the depth.

    Raises :class:`SPDValidationError` listing each violation with the level
    and cluster id where it occurs.
    """
    bad = []
    eps = tol * graph.min_weight
    if spd.n != graph.n:
        raise SPDValidationError([f"SPD covers {spd.n} vertices, graph has {graph.n}"])
    levels = spd.levels
    if not levels or len(levels[0]) != 1 or set(levels[0][0].vertices) != set(range(graph.n)):
        bad.append("level 1 must be the single cluster V")

    on_path = np.zeros(graph.n, dtype=int)
    for c in spd.clusters:
        where = f"level {c.level} cluster {c.id}"
        X = set(c.vertices)
        if not c.path:
            bad.append(f"{where}: empty path")
            continue
        if not set(c.path) <= X:
            bad.append(f"{where}: path leaves its cluster")
            continue
        if len(set(c.path)) != len(c.path):
            bad.append(f"{where}: path repeats a vertex")
            continue
        on_path[list(c.path)] += 1
        field = dijkstra(graph, [c.path[0]], c.vertices)
        acc = 0.0
        for a, b in zip(c.path, c.path[1:]):
            w = graph.weight(a, b)
            if w is None:
                bad.append(f"{where}: consecutive path vertices {a}, {b} are not adjacent")
                break
            acc += w
            if acc > field.dist[b] + eps:
                bad.append(f"{where}: path is not shortest in G[X] at vertex {b} ({acc} > {field.dist[b]})")
                break

    if np.any(on_path != 1):
        missing = np.flatnonzero(on_path == 0).tolist()
        twice = np.flatnonzero(on_path > 1).tolist()
        bad.append(f"paths do not partition V (uncovered {missing[:10]}, repeated {twice[:10]})")

    for i, lv in enumerate(levels):
        expected = []
        for c in lv:
            rest = sorted(set(c.vertices) - set(c.path))
            expected += [(c.id, tuple(comp)) for comp in induced_components(graph, rest)] if rest else []
        nxt = levels[i + 1] if i + 1 < len(levels) else []
        got = sorted((c.parent, c.vertices) for c in nxt)
        if sorted(expected) != got:
            bad.append(
                f"level {i + 2} clusters are not the components of level {i + 1} minus its paths "
                f"(expected {len(expected)}, found {len(nxt)})"
            )
    if bad:
        raise SPDValidationError(bad)
    return spd.depth


# ----------------------------------------------------------------------------
# construction


PathChooser = Callable[[WeightedGraph, tuple], Sequence[int]]


def build_spd(graph: WeightedGraph, choose_path: PathChooser) -> SPD:
    """Generic level-by-level construction.

    ``choose_path(graph, cluster_vertices)`` must return a shortest path of
    the induced subgraph; its first vertex becomes the root.
    """
    clusters = [Cluster(0, 1, tuple(range(graph.n)), tuple(choose_path(graph, tuple(range(graph.n)))), None)]
    frontier = [clusters[0]]
    level = 1
    while frontier:
        level += 1
        nxt = []
        for c in frontier:
            rest = sorted(set(c.vertices) - set(c.path))
            if not rest:
                continue
            for comp in induced_components(graph, rest):
                comp = tuple(comp)
                child = Cluster(len(clusters), level, comp, tuple(choose_path(graph, comp)), c.id)
                clusters.append(child)
                nxt.append(child)
        frontier = nxt
    return SPD(graph.n, clusters)


def _farthest(dist: np.ndarray, members: Sequence[int]) -> int:
    best, arg = -1.0, members[0]
    for v in members:
        if dist[v] > best:
            best, arg = dist[v], v
    return arg


def double_sweep_path(graph: WeightedGraph, X: tuple) -> list[int]:
    a = min(X)
    b = _farthest(dijkstra(graph, [a], X).dist, X)
    field = dijkstra(graph, [b], X)
    c = _farthest(field.dist, X)
    return field.path_to(c)


def build_spd_greedy(graph: WeightedGraph) -> SPD:
    """Delete an approximate diameter path of every cluster, recursively."""
    return build_spd(graph, double_sweep_path)


def build_spd_from_path_decomposition(graph: WeightedGraph, pd: "PathDecomposition") -> SPD:
    """SPD of depth at most ``width + 1`` from a path decomposition.

    In each cluster, join the smallest vertex of the first bag to the
    smallest vertex of the last bag (bags restricted to the cluster, empty
    ones dropped) by a shortest path. That path meets every bag.
    """
    validate_path_decomposition(graph, pd)

    def choose(g, X):
        Xs = set(X)
        bags = [b & Xs for b in pd.bags]
        bags = [b for b in bags if b]
        x, y = min(bags[0]), min(bags[-1])
        return dijkstra(g, [x], X).path_to(y)

    return build_spd(graph, choose)


# ----------------------------------------------------------------------------
# path decompositions


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    def __init__(self, bags):
        object.__setattr__(self, "bags", tuple(frozenset(int(v) for v in b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def dumps(self) -> str:
        return "".join(" ".join(str(v) for v in sorted(b)) + "\n" for b in self.bags)

    @classmethod
    def loads(cls, text: str) -> "PathDecomposition":
        return cls([[int(t) for t in ln.split()] for ln in text.splitlines() if ln.strip()])


def validate_path_decomposition(graph: WeightedGraph, pd: PathDecomposition) -> int:
    bad = []
    if not pd.bags:
        raise SPDValidationError(["path decomposition has no bags"])
    covered = set().union(*pd.bags)
    if covered != set(range(graph.n)):
        bad.append(f"vertex coverage: missing {sorted(set(range(graph.n)) - covered)[:10]}")
    for u, v, _ in graph.edges:
        if not any(u in b and v in b for b in pd.bags):
            bad.append(f"edge coverage: no bag holds edge ({u}, {v})")
    for v in sorted(covered):
        idx = [i for i, b in enumerate(pd.bags) if v in b]
        if idx[-1] - idx[0] + 1 != len(idx):
            bad.append(f"contiguity: bags holding vertex {v} are not consecutive")
    if bad:
        raise SPDValidationError(bad)
    return pd.width


def pathwidth_exact(graph: WeightedGraph) -> PathDecomposition:
    """Minimum-width path decomposition via vertex separation over subsets.

    ``best[S]`` is the smallest achievable maximum boundary size over
    orderings that place ``S`` first; the boundary of ``S`` is the set of
    members with a neighbour outside ``S``.
    """
    n = graph.n
    if n > PATHWIDTH_MAX_N:
        raise GraphError(f"exact pathwidth limited to n <= {PATHWIDTH_MAX_N}, got {n}")
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    nbr = [sum(1 << u for u in graph.neighbors(v)) for v in range(n)]
    boundary = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        inside = (masks >> v) & 1
        leaks = (masks & nbr[v]) != nbr[v]
        boundary += inside & leaks
    popcount = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        popcount += (masks >> v) & 1

    best = np.full(1 << n, np.iinfo(np.int64).max, dtype=np.int64)
    best[0] = 0
    for size in range(1, n + 1):
        layer = masks[popcount == size]
        low = np.full(layer.shape, np.iinfo(np.int64).max, dtype=np.int64)
        for v in range(n):
            has = ((layer >> v) & 1).astype(bool)
            cand = np.where(has, best[layer ^ (1 << v)], low)
            low = np.minimum(low, cand)
        best[layer] = np.maximum(low, boundary[layer])

    order = []
    S = full
    while S:
        for v in range(n):
            if (S >> v) & 1 and max(best[S ^ (1 << v)], boundary[S]) == best[S]:
                order.append(v)
                S ^= 1 << v
                break
    order.reverse()
    return layout_to_path_decomposition(graph, order)


def layout_to_path_decomposition(graph: WeightedGraph, order: Sequence[int]) -> PathDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    last = [max([pos[v]] + [pos[u] for u in graph.neighbors(v)]) for v in range(graph.n)]
    bags = []
    for i, v in enumerate(order):
        bags.append({v} | {order[j] for j in range(i) if last[order[j]] >= i})
    return PathDecomposition(bags)
