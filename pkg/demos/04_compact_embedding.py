"""Folding the coordinates into O(k log n) dimensions.

Per level, path coordinates of different clusters are superimposed with
+-1 sign codes; per level and sample, root coordinates collapse into an
odd-scale and an even-scale sum. Distortion stays in the same range while
the dimension drops sharply.
"""
from spdembed import generators as gens
from spdembed.embed import EmbedParams, compose, embed_compact
from spdembed.graph import apsp
from spdembed.metrics import distortion
from spdembed.spd import build_spd_from_path_decomposition

for k in (2, 3, 4):
    g, _ = gens.diamond(k)
    spd = build_spd_from_path_decomposition(g, gens.diamond_path_decomposition(k))
    D = apsp(g)
    params = EmbedParams(p=2, seed=1)
    full = compose(g, spd, params)
    small = embed_compact(g, spd, params)
    print(f"D_{k}: n={g.n:4d} depth={spd.depth}  full dim={full.dim:6d} distortion={distortion(D, full).distortion:6.3f}"
          f"   compact dim={small.dim:5d} distortion={distortion(D, small).distortion:6.3f}")
