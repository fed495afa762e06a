"""Sawtooth waves and their random shifts.

The root-distance coordinates are built from triangle waves g_t of height
2^t. Shifting the phase uniformly makes the expected value 2^(t-1) at every
point, and the expected gap between two points grows like min(|x - y|, 2^t).
"""
import numpy as np

from spdembed.rng import make_rng
from spdembed.sawtooth import expected_gap_exact, sawtooth

rng = make_rng(0, "test")
n = 200_000

print("g_3 on 0..16:", sawtooth(3, np.arange(17)).astype(int).tolist())

print("\nmean of the shifted wave (target 2^(t-1))")
for t in (2, 4, 8):
    a, b = rng.uniform(0, 1, n), rng.uniform(0, 4, n)
    for x in (0.0, 2.0 ** (t - 1), 3 * 2.0**t):
        vals = sawtooth(t, b * x + a * 2.0 ** (t + 1))
        print(f"  t={t} x={x:7.1f}  mean={vals.mean():9.4f}  target={2 ** (t - 1)}")

print("\nphase-averaged gap |g_4(z + a P) - g_4(a P)| against (P - z) z / P, P = 32")
for z in np.linspace(0, 32, 9):
    a = rng.uniform(0, 1, n)
    gap = np.abs(sawtooth(4, z + 32 * a) - sawtooth(4, 32 * a))
    print(f"  z={z:5.1f}  monte-carlo={gap.mean():8.4f}  exact={expected_gap_exact(4, z):8.4f}")
