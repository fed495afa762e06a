"""Sawtooth functions used for the randomized root-distance coordinates.

``sawtooth(t, x)`` is the triangle wave of amplitude ``2**t`` and period
``2**(t+1)``, zero at multiples of the period. The shifted variant feeds it
``beta * x + alpha * 2**(t+1)`` for one global pair ``(alpha, beta)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import MAX_SCALE


@dataclass(frozen=True)
class RandomShift:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha={self.alpha} outside [0, 1]")
        if not (0.0 <= self.beta <= 4.0):
            raise ValueError(f"beta={self.beta} outside [0, 4]")

    @classmethod
    def draw(cls, rng: np.random.Generator) -> "RandomShift":
        return cls(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 4.0)))


def _check_scale(t):
    t = np.asarray(t)
    if np.any(t < 0) or np.any(t > MAX_SCALE):
        raise ValueError(f"scale t must lie in [0, {MAX_SCALE}]")


def sawtooth(t, x):
    """Evaluate the sawtooth of scale ``t`` at ``x >= 0`` (broadcasts)."""
    _check_scale(t)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("sawtooth is defined for nonnegative x only")
    half = np.ldexp(1.0, np.asarray(t, dtype=np.int64))
    period = 2.0 * half
    q = np.floor(x / period)
    out = half - np.abs(x - (q * period + half))
    return out if out.ndim else float(out)


def sawtooth_shifted(t, shift: RandomShift, x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("sawtooth is defined for nonnegative x only")
    period = np.ldexp(2.0, np.asarray(t, dtype=np.int64))
    return sawtooth(t, shift.beta * x + shift.alpha * period)


def expected_gap_exact(t: int, z: float) -> float:
    """Mean over uniform ``alpha`` of ``|g_t(z + alpha P) - g_t(alpha P)|``, ``P = 2**(t+1)``."""
    period = 2.0 ** (t + 1)
    if not (0.0 <= z <= period):
        raise ValueError(f"z={z} outside [0, {period}]")
    return (period - z) * z / period
