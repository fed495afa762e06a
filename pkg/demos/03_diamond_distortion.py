"""Embedding diamond graphs into l_2, next to the certified lower bound.

Any embedding of D_k into l_p (p >= 2) has distortion at least
((k+1) / 2^(p-2))^(1/p), i.e. sqrt(k+1) for p = 2. The embedding built from
the width-(k+1) path decomposition stays within a small factor of it.
"""
import math

import numpy as np

from spdembed import generators as gens
from spdembed.embed import EmbeddingPlan, EmbedParams, compose
from spdembed.graph import apsp
from spdembed.lowerbound import diamond_distortion_lower_bound, diamond_poincare
from spdembed.metrics import distortion
from spdembed.spd import build_spd_from_path_decomposition

print(f"{'k':>2s} {'n':>5s} {'depth':>5s} {'dim':>7s} {'lower':>7s} {'mean':>7s} {'max':>7s} {'4sqrt(k+2)':>10s}")
for k in range(1, 5):
    g, levels = gens.diamond(k)
    spd = build_spd_from_path_decomposition(g, gens.diamond_path_decomposition(k))
    plan = EmbeddingPlan(g, spd)
    D = apsp(g)
    vals, dim = [], 0
    for seed in range(5):
        e = compose(g, spd, EmbedParams(p=2, seed=seed), plan=plan)
        vals.append(distortion(D, e).distortion)
        dim = e.dim
        lhs, rhs = diamond_poincare(e.points, levels, 2)
        assert lhs <= rhs + 1e-9
    print(f"{k:2d} {g.n:5d} {spd.depth:5d} {dim:7d} {diamond_distortion_lower_bound(k, 2):7.3f} "
          f"{np.mean(vals):7.3f} {max(vals):7.3f} {4 * math.sqrt(k + 2):10.3f}")
