"""Buffered diamondfolds.

Each vertex of the diamondfold X_k is blown up into a star with tiny edges,
one leaf per basic cycle through it, so basic cycles no longer share
vertices. Distances barely move, and shortest paths can now be deleted
without tangling the remaining cycles.
"""
import numpy as np

from spdembed import generators as gens
from spdembed.graph import apsp
from spdembed.spd import build_spd_greedy, validate_spd

for k in (1, 2):
    eps = 1 / (20 * 4**k)
    bd = gens.buffered_diamondfold(k, eps)
    base = gens.diamondfold(k)
    D, D0 = apsp(bd.graph), apsp(base.graph)
    drift = np.abs(D - D0[np.ix_(bd.copy_map, bd.copy_map)]).max()
    print(f"k={k}: X_k has {base.graph.n} vertices, buffered graph {bd.graph.n}; "
          f"max distance drift {drift:.4f} (eps={eps:.4f})")
    print(f"      depth: separator decomposition {validate_spd(bd.graph, bd.spd)}, "
          f"double-sweep greedy {validate_spd(bd.graph, build_spd_greedy(bd.graph))}, target {2 * (k + 1)}")
