"""Graph families: classic shapes, diamond graphs, diamondfolds.

Vertex numbering is fixed for every generator so that serialized fixtures
stay stable:

* ``path``/``cycle``/``clique``: ``0..n-1`` in order.
* ``star(n)``: center ``0``, leaves ``1..n-1``.
* ``grid(a, b)``: vertex ``(i, j)`` is ``i*b + j``.
* ``two_path_gadget(n)``: left path ``0..n-1``, right path ``n..2n-1``.
* ``diamond(k)``: ``s=0``, ``t=1``; each level appends two vertices per
  edge of the previous level, in that level's edge order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError, WeightedGraph
from .spd import SPD, Cluster, PathDecomposition

MAX_DIAMOND_K = 8
MAX_FOLD_K = 4


def _need(n: int, low: int = 1) -> None:
    if n < low:
        raise GraphError(f"size parameter must be at least {low}, got {n}")


def path(n: int) -> WeightedGraph:
    _need(n)
    return WeightedGraph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def cycle(n: int) -> WeightedGraph:
    _need(n, 3)
    return WeightedGraph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def star(n: int) -> WeightedGraph:
    _need(n)
    return WeightedGraph(n, [(0, i, 1.0) for i in range(1, n)])


def clique(n: int) -> WeightedGraph:
    _need(n)
    return WeightedGraph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def grid(a: int, b: int) -> WeightedGraph:
    _need(a)
    _need(b)
    edges = []
    for i in range(a):
        for j in range(b):
            v = i * b + j
            if j + 1 < b:
                edges.append((v, v + 1, 1.0))
            if i + 1 < a:
                edges.append((v, v + b, 1.0))
    return WeightedGraph(a * b, edges)


def two_path_gadget(n: int) -> tuple[WeightedGraph, SPD]:
    """Two unit-weight paths joined by a complete bipartite layer of weight ``n``.

    Returned with its depth-2 decomposition: the left path, then the right.
    """
    _need(n)
    edges = [(i, i + 1, 1.0) for i in range(n - 1)]
    edges += [(n + i, n + i + 1, 1.0) for i in range(n - 1)]
    edges += [(i, n + j, float(n)) for i in range(n) for j in range(n)]
    g = WeightedGraph(2 * n, edges)
    left, right = list(range(n)), list(range(n, 2 * n))
    spd = SPD(g.n, [
        Cluster(0, 1, tuple(range(2 * n)), tuple(left), None),
        Cluster(1, 2, tuple(right), tuple(right), 0),
    ])
    return g, spd


# ----------------------------------------------------------------------------
# diamond graphs


@dataclass(frozen=True)
class DiamondLevels:
    """Edge and diagonal pair sets of the diamond recursion, as vertices of D_k.

    ``E[i]`` lists the edges of D_i; ``D[i]`` lists the level-i diagonals for
    ``i >= 1`` and ``D[0] = E[0] = [(s, t)]``.
    """

    k: int
    E: tuple
    D: tuple


def diamond(k: int) -> tuple[WeightedGraph, DiamondLevels]:
    if k < 0:
        raise GraphError("k must be nonnegative")
    if k > MAX_DIAMOND_K:
        raise GraphError(f"diamond level {k} exceeds the size cap {MAX_DIAMOND_K}")
    n = 2
    E = [[(0, 1)]]
    D = [[(0, 1)]]
    for _ in range(k):
        nxt, diag = [], []
        for x, y in E[-1]:
            u, v = n, n + 1
            n += 2
            diag.append((u, v))
            nxt += [(x, u), (u, y), (y, v), (v, x)]
        E.append(nxt)
        D.append(diag)
    g = WeightedGraph(n, [(x, y, 1.0) for x, y in E[-1]])
    return g, DiamondLevels(k, tuple(tuple(e) for e in E), tuple(tuple(d) for d in D))


def diamond_path_decomposition(k: int) -> PathDecomposition:
    """Width-(k+1) path decomposition of D_k from the series-parallel structure.

    An edge is one bag; the two branches of a square are the series
    composition of their halves, and the parallel composition puts the first
    terminal into every bag of the first branch and the second terminal into
    every bag of the second.
    """
    _, lv = diamond(k)
    children = {}
    for i in range(1, k + 1):
        for (x, y), (u, v) in zip(lv.E[i - 1], lv.D[i]):
            children[(i - 1, frozenset((x, y)))] = (u, v)

    def rec(x, y, i):
        if i == k:
            return [{x, y}]
        u, v = children[(i, frozenset((x, y)))]
        first = rec(x, u, i + 1) + rec(u, y, i + 1)
        second = rec(x, v, i + 1) + rec(v, y, i + 1)
        return [b | {x} for b in first] + [b | {y} for b in second]

    return PathDecomposition([frozenset(b) for b in rec(0, 1, 0)])


# ----------------------------------------------------------------------------
# diamondfolds


@dataclass
class Diamondfold:
    graph: WeightedGraph
    basic_cycles: list  # 4-tuples of vertices in cyclic order


def _x1_pieces(corners, new_vertex):
    """Edges and basic cycles of X_1 drawn on a basic cycle with corners a0..a3.

    ``new_vertex(key)`` hands out vertex ids; side midpoints are keyed by the
    side so that sides shared between cycles are subdivided once.
    """
    a = corners
    mids = [new_vertex(frozenset((a[i], a[(i + 1) % 4]))) for i in range(4)]
    up, down = new_vertex(None), new_vertex(None)
    edges, cycles = [], []
    for i in range(4):
        edges += [(a[i], mids[i]), (mids[i], a[(i + 1) % 4]), (up, mids[i]), (down, mids[i])]
    for i in range(4):
        prev = mids[(i - 1) % 4]
        cycles.append((a[i], mids[i], up, prev))
        cycles.append((a[i], mids[i], down, prev))
    return edges, cycles


def diamondfold(k: int) -> Diamondfold:
    """Unweighted diamondfold X_k with its 8^k basic cycles.

    X_0 is the 4-cycle ``0..3``. Each step subdivides every side of every
    basic cycle (a side shared by several cycles is subdivided once) and adds
    two apex vertices joined to the four midpoints of that cycle.
    """
    if k < 0:
        raise GraphError("k must be nonnegative")
    if k > MAX_FOLD_K:
        raise GraphError(f"diamondfold level {k} exceeds the size cap {MAX_FOLD_K}")
    n = 4
    cycles = [(0, 1, 2, 3)]
    edges = {frozenset((i, (i + 1) % 4)) for i in range(4)}
    for _ in range(k):
        mids = {}
        counter = [n]

        def new_vertex(key):
            if key is not None and key in mids:
                return mids[key]
            v = counter[0]
            counter[0] += 1
            if key is not None:
                mids[key] = v
            return v

        new_edges, new_cycles = set(), []
        for c in cycles:
            es, cs = _x1_pieces(c, new_vertex)
            new_edges |= {frozenset(e) for e in es}
            new_cycles += cs
        n = counter[0]
        edges, cycles = new_edges, new_cycles
    g = WeightedGraph(n, sorted((min(e), max(e), 1.0) for e in edges))
    return Diamondfold(g, cycles)


@dataclass
class BufferedDiamondfold:
    graph: WeightedGraph
    spd: SPD
    basic_cycles: list
    copy_map: np.ndarray  # vertex of the buffered graph -> vertex of X_k
    eps: float


def buffered_diamondfold(k: int, eps: float) -> BufferedDiamondfold:
    """Buffered diamondfold with a shortest-path decomposition.

    Every vertex of X_k becomes a star with one leaf per basic cycle through
    it (star edges of weight ``eps``) and each basic cycle runs over its own
    leaves. Contracting the star edges gives back X_k, so ``copy_map`` sends
    a vertex to its diamondfold vertex. The decomposition deletes, in each
    cluster, the shortest path that best splits it.
    """
    from .buffered import MAX_BUFFERED_K, buffer_graph, buffered_spd, contract_light_edges

    if k < 1:
        raise GraphError("k must be at least 1")
    if k > MAX_BUFFERED_K:
        raise GraphError(f"buffered diamondfold level {k} exceeds the size cap {MAX_BUFFERED_K}")
    if not (0 < eps < 1.0 / (10 * 4**k)):
        raise GraphError(f"eps must lie in (0, 1/(10*4^k)) = (0, {1.0 / (10 * 4**k)})")
    g, cycles, centers = buffer_graph(diamondfold(k), eps)
    _, copy_map = contract_light_edges(g, 0.5)
    return BufferedDiamondfold(g, buffered_spd(g, centers), cycles, copy_map, eps)
