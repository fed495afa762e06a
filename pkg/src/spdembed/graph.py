"""Weighted undirected graphs and the shortest-path primitives built on them."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

INF = math.inf
# 2^(t+1) must stay an exact double for every scale we evaluate.
MAX_SCALE = 62


class GraphError(ValueError):
    pass


class WeightedGraph:
    """Connected undirected graph on vertices ``0..n-1`` with positive weights.

    Instances are treated as immutable; adjacency is built once at
    construction.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]], *, check_connected: bool = True):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        self.n = int(n)
        seen = set()
        clean = []
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (w > 0) or not math.isfinite(w):
                raise GraphError(f"edge ({u}, {v}) has nonpositive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            clean.append((key[0], key[1], w))
            adj[u].append((v, w))
            adj[v].append((u, w))
        for nbrs in adj:
            nbrs.sort()
        self.edges: tuple[tuple[int, int, float], ...] = tuple(clean)
        self.adj: tuple[tuple[tuple[int, float], ...], ...] = tuple(tuple(a) for a in adj)
        if check_connected and len(connected_components(self)) != 1:
            raise GraphError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.adj[v])

    def weight(self, u: int, v: int) -> Optional[float]:
        for x, w in self.adj[u]:
            if x == v:
                return w
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) is not None

    @property
    def min_weight(self) -> float:
        return min((w for _, _, w in self.edges), default=1.0)

    def to_csr(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n, self.n))
        e = np.asarray(self.edges, dtype=float)
        rows = np.concatenate([e[:, 0], e[:, 1]]).astype(int)
        cols = np.concatenate([e[:, 1], e[:, 0]]).astype(int)
        vals = np.concatenate([e[:, 2], e[:, 2]])
        return csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_weighted_edges_from(self.edges)
        return g

    def scaled(self, factor: float) -> "WeightedGraph":
        """Copy with every weight divided by ``factor``."""
        return WeightedGraph(self.n, [(u, v, w / factor) for u, v, w in self.edges], check_connected=False)

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightedGraph) and self.n == other.n and self.edges == other.edges

    __hash__ = None


@dataclass(frozen=True)
class DistanceField:
    sources: frozenset
    dist: np.ndarray
    parent: np.ndarray  # -1 marks "no parent" (sources and unreachable vertices)

    def path_to(self, v: int) -> list[int]:
        """Vertices from the nearest source to ``v`` along the parent tree."""
        if not math.isfinite(self.dist[v]):
            raise GraphError(f"vertex {v} is unreachable")
        out = [v]
        while self.parent[out[-1]] >= 0:
            out.append(int(self.parent[out[-1]]))
        out.reverse()
        return out


@dataclass(frozen=True)
class ScaleBound:
    M: int

    @classmethod
    def from_diameter(cls, diameter: float) -> "ScaleBound":
        M = 0
        while not diameter < 2.0**M:
            M += 1
        return cls(M)


def dijkstra(graph: WeightedGraph, sources: Iterable[int], restrict: Optional[Iterable[int]] = None) -> DistanceField:
    """Multi-source Dijkstra inside the subgraph induced by ``restrict``.

    Ties are broken towards the smaller vertex id, both in the settle order
    and in the choice of parent, so shortest-path trees are reproducible.
    """
    src = frozenset(int(s) for s in sources)
    if not src:
        raise GraphError("empty source set")
    allowed = None
    if restrict is not None:
        allowed = np.zeros(graph.n, dtype=bool)
        allowed[list(restrict)] = True
        outside = [s for s in src if not allowed[s]]
        if outside:
            raise GraphError(f"sources {sorted(outside)} lie outside the restriction")

    dist = np.full(graph.n, INF)
    parent = np.full(graph.n, -1, dtype=np.int64)
    done = np.zeros(graph.n, dtype=bool)
    heap = []
    for s in sorted(src):
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in graph.adj[u]:
            if done[v] or (allowed is not None and not allowed[v]):
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and u < parent[v]:
                parent[v] = u
    return DistanceField(src, dist, parent)


def connected_components(graph: WeightedGraph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Components of the graph after deleting ``removed``, sorted by smallest member."""
    gone = np.zeros(graph.n, dtype=bool)
    gone[list(removed)] = True
    comps = []
    for start in range(graph.n):
        if gone[start]:
            continue
        gone[start] = True
        stack = [start]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v, _ in graph.adj[u]:
                if not gone[v]:
                    gone[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def induced_components(graph: WeightedGraph, vertices: Iterable[int]) -> list[list[int]]:
    keep = set(vertices)
    return connected_components(graph, [v for v in range(graph.n) if v not in keep])


def apsp(graph: WeightedGraph) -> np.ndarray:
    """All-pairs shortest-path matrix (scipy's Dijkstra; independent of :func:`dijkstra`)."""
    return shortest_path(graph.to_csr(), method="D", directed=False)


def diameter(graph: WeightedGraph) -> float:
    return float(apsp(graph).max())


def normalize_and_scale(graph: WeightedGraph) -> tuple[WeightedGraph, float, ScaleBound]:
    """Rescale so the lightest edge weighs exactly 1.

    Returns the rescaled graph, the factor the original weights were divided
    by, and the minimal ``M`` with ``diameter < 2**M``.
    """
    factor = graph.min_weight
    g = graph.scaled(factor)
    bound = ScaleBound.from_diameter(diameter(g))
    if bound.M + 1 > MAX_SCALE:
        raise GraphError(f"scale bound M={bound.M} exceeds the supported maximum")
    return g, factor, bound


def shortest_path_between(graph: WeightedGraph, x: int, y: int, restrict: Optional[Sequence[int]] = None) -> list[int]:
    return dijkstra(graph, [x], restrict).path_to(y)


def path_weight(graph: WeightedGraph, path: Sequence[int]) -> float:
    total = 0.0
    for a, b in zip(path, path[1:]):
        w = graph.weight(a, b)
        if w is None:
            raise GraphError(f"({a}, {b}) is not an edge")
        total += w
    return total


# text format: "n m" header, then one "u v w" line per edge


def dumps_graph(graph: WeightedGraph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines += [f"{u} {v} {w!r}" for u, v, w in graph.edges]
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> WeightedGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("missing 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 3:
            raise GraphError(f"bad edge line: {' '.join(r)}")
        edges.append((int(r[0]), int(r[1]), float(r[2])))
    return WeightedGraph(n, edges)


def read_graph(path) -> WeightedGraph:
    with open(path) as fh:
        return loads_graph(fh.read())


def write_graph(graph: WeightedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_graph(graph))
