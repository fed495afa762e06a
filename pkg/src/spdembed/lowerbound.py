"""Distortion lower bound for embedding diamond graphs into l_p, p >= 2.

With weights ``alpha_0 = 2^(-k(p-2))`` and ``alpha_i = 2^(-(k-i+1)(p-2))``,
every map ``f`` of the diamond D_k into l_p satisfies

    sum_i alpha_i sum_{(x,y) in D_i} |f(x) - f(y)|^p
        <= alpha_(k+1) sum_{(x,y) in E_k} |f(x) - f(y)|^p,

while the same weighted sum of graph distances equals ``(k+1) 4^k``. A
non-contractive map with expansion ``rho`` therefore has
``rho >= ((k+1) / 2^(p-2))^(1/p)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .generators import DiamondLevels

MAX_CERT_K = 12


def _check_p(p: float) -> None:
    if p < 2:
        raise ValueError(f"the certificate needs p >= 2, got {p}")


@dataclass(frozen=True)
class PoincareWeights:
    k: int
    p: float
    alpha: tuple  # alpha[0..k+1]

    @classmethod
    def of(cls, k: int, p: float) -> "PoincareWeights":
        _check_p(p)
        if not 0 <= k <= MAX_CERT_K:
            raise ValueError(f"k must lie in [0, {MAX_CERT_K}]")
        a = [2.0 ** (-k * (p - 2))] + [2.0 ** (-(k - i + 1) * (p - 2)) for i in range(1, k + 2)]
        return cls(k, p, tuple(a))


def _pnorm_p(x: np.ndarray, p: float) -> np.ndarray:
    return np.sum(np.abs(x) ** p, axis=-1)


def quadrilateral_gap(a, b, c, d, p: float) -> float:
    """``2^(p-2) * (sum of the four sides^p) - (sum of the two diagonals^p)``; nonnegative."""
    _check_p(p)
    a, b, c, d = (np.asarray(v, dtype=float) for v in (a, b, c, d))
    if not a.shape == b.shape == c.shape == d.shape:
        raise ValueError("vectors must share one shape")
    sides = _pnorm_p(a - b, p) + _pnorm_p(b - c, p) + _pnorm_p(c - d, p) + _pnorm_p(d - a, p)
    diagonals = _pnorm_p(a - c, p) + _pnorm_p(b - d, p)
    return float(2.0 ** (p - 2) * sides - diagonals)


def diamond_poincare(points, levels: DiamondLevels, p: float) -> tuple[float, float]:
    """Both sides of the weighted diagonal/edge inequality for ``points`` (rows = vertices of D_k)."""
    w = PoincareWeights.of(levels.k, p)
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise ValueError("points must be a 2-d array")
    n_needed = 1 + max(max(pair) for pair in levels.E[-1])
    if X.shape[0] != n_needed:
        raise ValueError(f"expected {n_needed} rows for D_{levels.k}, got {X.shape[0]}")

    def total(pairs):
        idx = np.asarray(pairs, dtype=np.int64)
        return float(np.sum(_pnorm_p(X[idx[:, 0]] - X[idx[:, 1]], p)))

    lhs = sum(w.alpha[i] * total(levels.D[i]) for i in range(levels.k + 1))
    rhs = w.alpha[levels.k + 1] * total(levels.E[levels.k])
    return lhs, rhs


def diamond_weighted_distance_sum(levels: DiamondLevels, dist, p: float) -> float:
    w = PoincareWeights.of(levels.k, p)
    D = np.asarray(dist, dtype=float)
    out = 0.0
    for i in range(levels.k + 1):
        idx = np.asarray(levels.D[i], dtype=np.int64)
        out += w.alpha[i] * float(np.sum(D[idx[:, 0], idx[:, 1]] ** p))
    return out


def diamond_distortion_lower_bound(k: int, p: float) -> float:
    _check_p(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return ((k + 1) / 2.0 ** (p - 2)) ** (1.0 / p)


def lee_naor_value(k: int, p: float) -> float:
    """``sqrt(1 + (p-1) k)``: the known bound for 1 < p <= 2, quoted for reference only."""
    if not 1 < p <= 2:
        raise ValueError("reference value defined for 1 < p <= 2")
    return math.sqrt(1 + (p - 1) * k)

