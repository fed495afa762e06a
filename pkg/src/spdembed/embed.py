"""Randomized embeddings of graphs with a shortest path decomposition into l_p.

For every cluster ``X`` of the decomposition, with path ``P`` rooted at
``r`` and child components ``X_1..X_s``, two groups of coordinates are
emitted:

* one "path" coordinate per child ``X_j``: for ``v`` in ``X_j`` the value is
  ``min(d_X(v, P), 2 d_G(v, V - X))``, zero everywhere else;
* "root" coordinates, one per distance scale ``t``: ``v`` in ``X`` writes
  ``(1 - lam) * g(d_X(v, r))`` at scale ``t_v`` and ``lam * g(d_X(v, r))`` at
  scale ``t_v + 1``, where ``2 d_G(v, V - X)`` lies in ``[2^t_v, 2^(t_v+1))``,
  ``lam = (2 d_G(v, V - X) - 2^t_v) / 2^t_v`` and ``g`` is the shifted
  sawtooth of that scale.

Distances are computed on the graph rescaled to unit minimum weight; output
points are mapped back to the caller's units.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .graph import MAX_SCALE, GraphError, WeightedGraph, dijkstra, normalize_and_scale
from .rng import make_rng
from .sawtooth import RandomShift, sawtooth
from .spd import SPD, validate_spd

DEFAULT_CM = 12.0
CODE_RETRIES = 10_000
# sign codes need m_code >= CODE_LENGTH_FACTOR * log2(count)
CODE_LENGTH_FACTOR = 4.0


@dataclass(frozen=True)
class CoordinateMeta:
    """Provenance of one output coordinate.

    ``kind`` is ``"path"`` (``index`` = child cluster id), ``"root"``
    (``index`` = scale), ``"folded_path"`` (``index`` = code position) or
    ``"folded_root"`` (``index`` = parity, 1 odd / 0 even). Folded
    coordinates belong to a whole level, so their ``cluster`` is -1.
    """

    sample: int
    level: int
    cluster: int
    kind: str
    index: int


@dataclass
class EmbedParams:
    p: float = 2.0
    m: Optional[int] = None
    c_m: float = DEFAULT_CM
    seed: int = 0
    compact: bool = False
    m_code: Optional[int] = None

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be at least 1")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be at least 1")
        if self.m_code is not None and self.m_code < 1:
            raise ValueError("m_code must be at least 1")

    def repetitions(self, n: int) -> int:
        if self.m is not None:
            return self.m
        return max(1, math.ceil(self.c_m * math.log(n))) if n > 1 else 1


@dataclass
class Embedding:
    points: np.ndarray
    p: float
    coords: list
    scale: float = 1.0
    m: int = 1
    seed: Optional[int] = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def columns(self, kind: str, level: Optional[int] = None) -> np.ndarray:
        return np.array(
            [j for j, c in enumerate(self.coords) if c.kind == kind and (level is None or c.level == level)], dtype=int
        )

    def header(self) -> dict:
        return {
            "n": self.n, "D": self.dim, "p": self.p, "m": self.m, "seed": self.seed, "scale": self.scale,
            "extra": self.extra, "coords": [list(asdict(c).values()) for c in self.coords],
        }


# ----------------------------------------------------------------------------
# geometry shared by all samples


def _dyadic_scale(x: float) -> int:
    """``t`` with ``x`` in ``[2^t, 2^(t+1))``, exact for doubles."""
    return math.frexp(x)[1] - 1


class EmbeddingPlan:
    """Shift-independent part of the embedding of one graph/SPD pair.

    Holds the deterministic path coordinates and, for the root coordinates,
    the (row, column, weight, scale, root distance) entries; evaluating a
    shift only recomputes sawtooth values.
    """

    def __init__(self, graph: WeightedGraph, spd: SPD, *, validate: bool = True):
        if validate:
            validate_spd(graph, spd)
        self.graph = graph
        g, factor, bound = normalize_and_scale(graph)
        self.scale = factor
        self.M = bound.M
        self.n = g.n
        self.depth = spd.depth
        n = g.n

        coords, const_entries = [], []
        rrow, rcol, rcoef, rscale, rdist = [], [], [], [], []
        self.path_values = {}  # child cluster id -> (vertices, values), used for folding
        for X in spd.clusters:
            verts = list(X.vertices)
            inside = np.zeros(n, dtype=bool)
            inside[verts] = True
            if inside.all():
                boundary = np.full(n, math.inf)
            else:
                boundary = dijkstra(g, np.flatnonzero(~inside)).dist
            to_path = dijkstra(g, X.path, verts).dist
            to_root = dijkstra(g, [X.root], verts).dist

            for child in spd.children(X.id):
                cv = list(child.vertices)
                vals = np.minimum(to_path[cv], 2.0 * boundary[cv])
                self.path_values[child.id] = (np.asarray(cv), vals, X.level)
                j = len(coords)
                coords.append(CoordinateMeta(0, X.level, X.id, "path", child.id))
                const_entries += [(v, j, val) for v, val in zip(cv, vals)]

            weights = {}
            for v in verts:
                if math.isinf(boundary[v]):
                    tv, lam = self.M, 0.0
                else:
                    twice = 2.0 * boundary[v]
                    tv = _dyadic_scale(twice)
                    lam = (twice - 2.0**tv) / 2.0**tv
                for t, w in ((tv, 1.0 - lam), (tv + 1, lam)):
                    if w > 0.0:
                        weights.setdefault(t, []).append((v, w))
            top = max(weights, default=0)
            if top > MAX_SCALE:
                raise GraphError(f"scale {top} exceeds the supported maximum {MAX_SCALE}")
            for t in range(0, max(self.M, top) + 1):
                if t not in weights:
                    continue  # untouched scale: column pruned
                j = len(coords)
                coords.append(CoordinateMeta(0, X.level, X.id, "root", t))
                for v, w in weights[t]:
                    rrow.append(v)
                    rcol.append(j)
                    rcoef.append(w)
                    rscale.append(t)
                    rdist.append(to_root[v])

        self.coords = coords
        self.dim = len(coords)
        self.const = np.zeros((n, self.dim))
        for v, j, val in const_entries:
            self.const[v, j] = val
        self.root_row = np.asarray(rrow, dtype=np.int64)
        self.root_col = np.asarray(rcol, dtype=np.int64)
        self.root_coef = np.asarray(rcoef, dtype=float)
        self.root_scale = np.asarray(rscale, dtype=np.int64)
        self.root_dist = np.asarray(rdist, dtype=float)
        self.root_period = np.ldexp(2.0, self.root_scale)
        self.levels = [lv for lv in spd.levels]
        self.spd = spd

    def root_values(self, shift: RandomShift) -> np.ndarray:
        arg = shift.beta * self.root_dist + shift.alpha * self.root_period
        return self.root_coef * sawtooth(self.root_scale, arg)

    def evaluate(self, shift: RandomShift) -> np.ndarray:
        """Unscaled single-sample embedding in normalized units."""
        out = self.const.copy()
        out[self.root_row, self.root_col] = self.root_values(shift)
        return out


# ----------------------------------------------------------------------------
# public operations


def embed_single(graph: WeightedGraph, spd: SPD, shift: RandomShift, p: float = 2.0, *, plan=None) -> Embedding:
    plan = plan or EmbeddingPlan(graph, spd)
    pts = plan.evaluate(shift) * plan.scale
    return Embedding(pts, p, list(plan.coords), plan.scale, 1, extra={"alpha": shift.alpha, "beta": shift.beta})


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SPD_EMBED_THREADS", "1")))
    except ValueError:
        return 1


def compose(graph: WeightedGraph, spd: SPD, params: EmbedParams, rng: Optional[np.random.Generator] = None,
            *, plan=None) -> Embedding:
    """Concatenate ``m`` independent samples, each scaled by ``m^(-1/p)``."""
    if rng is None:
        rng = make_rng(params.seed, "embed")
    plan = plan or EmbeddingPlan(graph, spd)
    m = params.repetitions(graph.n)
    shifts = [RandomShift.draw(rng) for _ in range(m)]
    with ThreadPoolExecutor(_workers()) as pool:
        blocks = list(pool.map(plan.evaluate, shifts))
    factor = plan.scale * m ** (-1.0 / params.p)
    pts = np.hstack(blocks) * factor
    coords = [CoordinateMeta(s, c.level, c.cluster, c.kind, c.index) for s in range(m) for c in plan.coords]
    return Embedding(pts, params.p, coords, plan.scale, m, params.seed)


def sign_codes(count: int, m_code: int, rng: Optional[np.random.Generator] = None,
               retries: int = CODE_RETRIES) -> np.ndarray:
    """``count`` vectors in {-1, +1}^m_code, pairwise differing in >= m_code/4 places.

    Greedy: each new code is the first random candidate far enough from all
    accepted ones.
    """
    if count < 1 or m_code < 1:
        raise ValueError("count and m_code must be positive")
    if count > 1 and m_code < CODE_LENGTH_FACTOR * math.log2(count):
        raise ValueError(f"m_code={m_code} too short for {count} codes (need >= {CODE_LENGTH_FACTOR}*log2(count))")
    if rng is None:
        rng = make_rng(0, "codes")
    need = math.ceil(m_code / 4)
    codes = np.empty((count, m_code), dtype=np.int8)
    codes[0] = 1
    for i in range(1, count):
        for _ in range(retries):
            cand = rng.choice(np.array([-1, 1], dtype=np.int8), size=m_code)
            if np.all((codes[:i] != cand).sum(axis=1) >= need):
                codes[i] = cand
                break
        else:
            raise ValueError(f"no code #{i} at distance >= {need} after {retries} tries (m_code={m_code})")
    return codes


def default_code_length(count: int) -> int:
    return max(8, math.ceil(8 * math.log2(count))) if count > 1 else 8


def embed_compact(graph: WeightedGraph, spd: SPD, params: EmbedParams, rng: Optional[np.random.Generator] = None,
                  *, plan=None) -> Embedding:
    """Low-dimensional variant.

    Per level ``i``, the path coordinates of all level-``i`` clusters are
    folded into ``m_code`` coordinates: a vertex of child cluster ``Y`` gets
    its path value times the sign code of ``Y``, divided by
    ``m_code^(1/p)``. This part is deterministic and emitted once. The root
    coordinates of a level are summed into an odd-scale and an even-scale
    coordinate, and that part is repeated ``m`` times with ``m^(-1/p)``
    scaling.
    """
    if rng is None:
        rng = make_rng(params.seed, "embed")
    code_rng = make_rng(params.seed, "codes")
    plan = plan or EmbeddingPlan(graph, spd)
    n, p = plan.n, params.p
    m = params.repetitions(graph.n)
    blocks, coords = [], []

    for i in range(1, plan.depth):
        children = plan.levels[i]  # level i+1 clusters
        if not children:
            continue
        L = params.m_code or default_code_length(len(children))
        codes = sign_codes(len(children), L, code_rng)
        block = np.zeros((n, L))
        for code, child in zip(codes, children):
            verts, vals, _ = plan.path_values[child.id]
            block[verts] = np.outer(vals, code) * L ** (-1.0 / p)
        blocks.append(block)
        coords += [CoordinateMeta(0, i, -1, "folded_path", q) for q in range(L)]

    root_level = np.array([plan.coords[j].level for j in plan.root_col], dtype=np.int64)
    parity = plan.root_scale % 2
    shifts = [RandomShift.draw(rng) for _ in range(m)]
    for s, shift in enumerate(shifts):
        vals = plan.root_values(shift)
        block = np.zeros((n, 2 * plan.depth))
        np.add.at(block, (plan.root_row, 2 * (root_level - 1) + parity), vals)
        blocks.append(block * m ** (-1.0 / p))
        for lv in range(1, plan.depth + 1):
            coords += [CoordinateMeta(s, lv, -1, "folded_root", 0), CoordinateMeta(s, lv, -1, "folded_root", 1)]

    pts = (np.hstack(blocks) if blocks else np.zeros((n, 0))) * plan.scale
    return Embedding(pts, p, coords, plan.scale, m, params.seed, extra={"compact": True})


def embed(graph: WeightedGraph, spd: SPD, params: EmbedParams) -> Embedding:
    """Entry point used by the CLI: compact or full embedding per ``params``."""
    rng = make_rng(params.seed, "embed")
    if params.compact:
        return embed_compact(graph, spd, params, rng)
    return compose(graph, spd, params, rng)


# ----------------------------------------------------------------------------
# serialization: one JSON header line, then the matrix


def save_embedding(emb: Embedding, path, binary: bool = False) -> None:
    head = emb.header()
    head["format"] = "binary-f64le" if binary else "text"
    with open(path, "wb") as fh:
        fh.write(json.dumps(head, sort_keys=True).encode() + b"\n")
        if binary:
            fh.write(np.ascontiguousarray(emb.points, dtype="<f8").tobytes())
        else:
            for row in emb.points:
                fh.write((" ".join(repr(float(x)) for x in row) + "\n").encode())


def load_embedding(path) -> Embedding:
    with open(path, "rb") as fh:
        head = json.loads(fh.readline())
        body = fh.read()
    n, D = head["n"], head["D"]
    if head.get("format") == "binary-f64le":
        pts = np.frombuffer(body, dtype="<f8").reshape(n, D).copy()
    else:
        rows = [ln.split() for ln in body.decode().splitlines() if ln.strip()]
        pts = np.array([[float(x) for x in r] for r in rows], dtype=float).reshape(n, D)
    coords = [CoordinateMeta(*c) for c in head["coords"]]
    return Embedding(pts, head["p"], coords, head["scale"], head["m"], head["seed"], head.get("extra", {}))
