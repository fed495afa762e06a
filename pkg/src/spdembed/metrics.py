"""Distortion, Lipschitz, contraction and support measurements."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .embed import Embedding, EmbeddingPlan
from .graph import WeightedGraph, apsp
from .sawtooth import RandomShift
from .spd import SPD


@dataclass
class DistortionReport:
    """Extremes of ``|phi(u) - phi(v)|_p / d(u, v)`` over all pairs.

    After rescaling so the smallest ratio is 1 (non-contractive), the
    expansion is ``max/min`` and the contraction is 1.
    """

    expansion: float
    contraction: float
    distortion: float
    max_ratio: float
    min_ratio: float
    max_pair: tuple
    min_pair: tuple


def embedded_distances(emb: Embedding) -> np.ndarray:
    if emb.dim == 0:
        return np.zeros((emb.n, emb.n))
    if math.isinf(emb.p):
        return squareform(pdist(emb.points, "chebyshev"))
    return squareform(pdist(emb.points, "minkowski", p=emb.p))


def _pair_ratios(dist, emb: Embedding):
    dist = np.asarray(dist, dtype=float)
    if dist.shape != (emb.n, emb.n):
        raise ValueError(f"distance matrix {dist.shape} does not match {emb.n} embedded points")
    iu, ju = np.triu_indices(emb.n, 1)
    d = dist[iu, ju]
    e = embedded_distances(emb)[iu, ju]
    keep = d > 0
    return iu[keep], ju[keep], d[keep], e[keep]


def distortion(dist, emb: Embedding) -> DistortionReport:
    iu, ju, d, e = _pair_ratios(dist, emb)
    if d.size == 0:
        return DistortionReport(1.0, 1.0, 1.0, 1.0, 1.0, (), ())
    r = e / d
    hi, lo = int(np.argmax(r)), int(np.argmin(r))
    rmax, rmin = float(r[hi]), float(r[lo])
    rho = rmax / rmin if rmin > 0 else math.inf
    return DistortionReport(rho, 1.0, rho, rmax, rmin, (int(iu[hi]), int(ju[hi])), (int(iu[lo]), int(ju[lo])))


def distortion_csv(dist, emb: Embedding) -> str:
    """Per-pair rows ``u, v, graph, embedded, ratio`` and a closing summary row."""
    iu, ju, d, e = _pair_ratios(dist, emb)
    rep = distortion(dist, emb)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["u", "v", "graph_distance", "embedded_distance", "ratio"])
    for u, v, dd, ee in zip(iu, ju, d, e):
        w.writerow([int(u), int(v), repr(float(dd)), repr(float(ee)), repr(float(ee / dd))])
    w.writerow(["summary", "", "", "distortion", repr(rep.distortion)])
    return out.getvalue()


def coordinate_lipschitz(graph: WeightedGraph, emb: Embedding, dist: Optional[np.ndarray] = None) -> float:
    """``max_j max_{u != v} |f_j(u) - f_j(v)| / d(u, v)``, exact over all pairs."""
    if emb.dim == 0 or graph.n < 2:
        return 0.0
    D = apsp(graph) if dist is None else dist
    X = emb.points
    best = 0.0
    for u in range(graph.n - 1):
        gap = np.abs(X[u + 1:] - X[u]).max(axis=1)
        best = max(best, float(np.max(gap / D[u, u + 1:])))
    return best


@dataclass
class ContractionEstimate:
    pair: tuple
    distance: float
    estimate: float  # max_j mean |f_j(u) - f_j(v)| / d(u, v)
    stderr: float
    coordinate: int


def contraction_estimate(graph: WeightedGraph, spd: SPD, pairs: Sequence[tuple], trials: int,
                         rng: np.random.Generator, *, plan: Optional[EmbeddingPlan] = None) -> list:
    """Monte-Carlo ``max_j E|f_j(u) - f_j(v)| / d(u, v)`` over fresh shifts."""
    if trials < 100:
        raise ValueError("use at least 100 trials")
    plan = plan or EmbeddingPlan(graph, spd)
    D = apsp(graph)
    idx = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    s1 = np.zeros((len(idx), plan.dim))
    s2 = np.zeros_like(s1)
    for _ in range(trials):
        F = plan.evaluate(RandomShift.draw(rng)) * plan.scale
        gap = np.abs(F[idx[:, 0]] - F[idx[:, 1]])
        s1 += gap
        s2 += gap * gap
    mean = s1 / trials
    var = np.maximum(s2 / trials - mean**2, 0.0)
    out = []
    for r, (u, v) in enumerate(idx):
        d = float(D[u, v])
        if d == 0 or plan.dim == 0:
            out.append(ContractionEstimate((int(u), int(v)), d, 0.0, 0.0, -1))
            continue
        j = int(np.argmax(mean[r]))
        se = math.sqrt(var[r, j] / (trials - 1)) if trials > 1 else 0.0
        out.append(ContractionEstimate((int(u), int(v)), d, float(mean[r, j]) / d, se / d, j))
    return out


def max_support(emb: Embedding) -> int:
    if emb.dim == 0:
        return 0
    return int(np.max(np.count_nonzero(emb.points, axis=1)))
