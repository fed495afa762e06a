"""Shortest path decompositions of a few graph families.

Each level deletes one shortest path per cluster and recurses on what is
left. Paths need depth 1, cliques K_n need n/2, and a path decomposition of
width w gives depth at most w + 1.
"""
from spdembed import generators as gens
from spdembed.spd import build_spd_from_path_decomposition, build_spd_greedy, pathwidth_exact, validate_spd

rows = []
for name, g in [("path(16)", gens.path(16)), ("cycle(12)", gens.cycle(12)), ("star(9)", gens.star(9)),
                ("clique(8)", gens.clique(8)), ("grid(4,4)", gens.grid(4, 4))]:
    greedy = validate_spd(g, build_spd_greedy(g))
    pd = pathwidth_exact(g) if g.n <= 16 else None
    from_pd = validate_spd(g, build_spd_from_path_decomposition(g, pd)) if pd else None
    rows.append((name, g.n, greedy, pd.width if pd else "-", from_pd or "-"))

for k in range(1, 5):
    g, _ = gens.diamond(k)
    pd = gens.diamond_path_decomposition(k)
    rows.append((f"diamond({k})", g.n, validate_spd(g, build_spd_greedy(g)), pd.width,
                 validate_spd(g, build_spd_from_path_decomposition(g, pd))))

g, spd = gens.two_path_gadget(6)
rows.append(("two_path(6) by hand", g.n, validate_spd(g, spd), "-", "-"))

print(f"{'graph':22s} {'n':>4s} {'greedy':>7s} {'width':>6s} {'via pd':>7s}")
for r in rows:
    print(f"{r[0]:22s} {r[1]:4d} {r[2]!s:>7s} {r[3]!s:>6s} {r[4]!s:>7s}")
