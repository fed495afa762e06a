import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.sparse.csgraph import dijkstra as sp_dijkstra

from spdembed import generators as gens
from spdembed.graph import (
    GraphError,
    WeightedGraph,
    apsp,
    connected_components,
    dijkstra,
    dumps_graph,
    loads_graph,
    normalize_and_scale,
    path_weight,
    shortest_path_between,
)

from conftest import connected_graphs


def test_dijkstra_single_and_multi_source():
    g = gens.path(3)
    assert dijkstra(g, [0]).dist.tolist() == [0, 1, 2]
    assert dijkstra(g, [0, 2]).dist.tolist() == [0, 1, 0]


def test_dijkstra_diamond_one():
    g, _ = gens.diamond(1)
    assert dijkstra(g, [0]).dist[1] == 2


def test_dijkstra_restricted_gives_inf_outside():
    g = gens.path(4)
    d = dijkstra(g, [0], restrict=[0, 1]).dist
    assert d[1] == 1 and math.isinf(d[2]) and math.isinf(d[3])


def test_dijkstra_errors():
    g = gens.path(3)
    with pytest.raises(GraphError):
        dijkstra(g, [])
    with pytest.raises(GraphError):
        dijkstra(g, [2], restrict=[0, 1])


def test_components():
    g = gens.path(3)
    assert connected_components(g, {1}) == [[0], [2]]
    assert connected_components(g, {0, 1, 2}) == []
    d1, _ = gens.diamond(1)
    # s=0, t=1, diagonal u=2, v=3
    assert connected_components(d1, {0, 2, 1}) == [[3]]


def test_apsp_examples():
    assert np.array_equal(apsp(gens.clique(3)), 1 - np.eye(3))
    assert apsp(gens.path(4))[0, 3] == 3
    g, _ = gens.diamond(2)
    assert apsp(g)[0, 1] == 4


def test_normalize_examples():
    g = WeightedGraph(3, [(0, 1, 0.5), (1, 2, 0.5)])
    h, factor, bound = normalize_and_scale(g)
    assert factor == 0.5 and all(w == 1.0 for _, _, w in h.edges)
    assert normalize_and_scale(gens.path(3))[2].M == 2
    g3, _ = gens.diamond(3)
    assert normalize_and_scale(g3)[2].M == 4


@pytest.mark.parametrize("edges", [
    [(0, 1, 0.0)], [(0, 1, -1.0)], [(0, 0, 1.0)], [(0, 1, 1.0), (1, 0, 2.0)], [(0, 1, float("nan"))],
])
def test_invalid_edges_rejected(edges):
    with pytest.raises(GraphError):
        WeightedGraph(2, edges)


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        WeightedGraph(3, [(0, 1, 1.0)])


def test_text_format_roundtrip_and_errors():
    g = WeightedGraph(3, [(0, 1, 0.25), (1, 2, 3.0)])
    assert loads_graph(dumps_graph(g)) == g
    assert loads_graph("# comment\n2 1\n0 1 1.5\n").weight(0, 1) == 1.5
    for bad in ["2 2\n0 1 1\n", "3 1\n0 1 1\n", "x\n", "2 1\n0 1 -2\n", "3 2\n0 1 1\n0 1 2\n"]:
        with pytest.raises(GraphError):
            loads_graph(bad)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=64))
def test_dijkstra_matches_scipy(g):
    D = apsp(g)
    ref = sp_dijkstra(g.to_csr(), directed=False)
    assert np.allclose(D, ref, rtol=0, atol=1e-12)
    for s in range(0, g.n, max(1, g.n // 5)):
        assert np.array_equal(dijkstra(g, [s]).dist, D[s])


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=30))
def test_multi_source_is_pointwise_min(g):
    sources = list(range(0, g.n, 3))
    D = apsp(g)
    assert np.allclose(dijkstra(g, sources).dist, D[sources].min(axis=0))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=30))
def test_distance_field_triangle_consistency(g):
    f = dijkstra(g, [0])
    assert f.dist[0] == 0
    for u, v, w in g.edges:
        assert abs(f.dist[u] - f.dist[v]) <= w + 1e-12
    for v in range(g.n):
        p = f.path_to(v)
        assert p[0] == 0 and p[-1] == v
        assert path_weight(g, p) == pytest.approx(f.dist[v])


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=30))
def test_components_partition(g):
    removed = set(range(0, g.n, 2))
    comps = connected_components(g, removed)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == sorted(set(range(g.n)) - removed)
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    label = {v: i for i, c in enumerate(comps) for v in c}
    for u, v, _ in g.edges:
        if u in label and v in label:
            assert label[u] == label[v]


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=30))
def test_normalized_scale_bound(g):
    h, factor, bound = normalize_and_scale(g)
    assert h.min_weight == 1.0
    diam = apsp(h).max()
    assert diam < 2**bound.M
    assert bound.M == 0 or 2 ** (bound.M - 1) <= diam


def test_shortest_path_between():
    g = gens.cycle(6)
    assert shortest_path_between(g, 0, 2) == [0, 1, 2]
