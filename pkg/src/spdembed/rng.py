"""Seeded counter-based random streams.

Every stochastic component draws from a Philox generator keyed by the user
seed and a named substream, so components can be re-run independently.
"""
from __future__ import annotations

import numpy as np

STREAMS = {"spd": 1, "embed": 2, "verify": 3, "codes": 4, "test": 5}


def make_rng(seed: int, stream: str = "embed") -> np.random.Generator:
    if stream not in STREAMS:
        raise KeyError(f"unknown stream {stream!r}; known: {sorted(STREAMS)}")
    ss = np.random.SeedSequence(int(seed), spawn_key=(STREAMS[stream],))
    return np.random.Generator(np.random.Philox(ss))
