import numpy as np
import pytest
from hypothesis import strategies as st

from spdembed import generators as gens
from spdembed.graph import WeightedGraph
from spdembed.spd import build_spd_from_path_decomposition, build_spd_greedy


@st.composite
def connected_graphs(draw, min_n=1, max_n=32, weighted=True):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    weight = st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0, 7.25]) if weighted else st.just(1.0)
    edges = {}
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges[(u, v)] = draw(weight)
    if n > 2:
        extra = draw(st.integers(0, min(2 * n, n * (n - 1) // 2 - (n - 1))))
        for _ in range(extra):
            u = draw(st.integers(0, n - 1))
            v = draw(st.integers(0, n - 1))
            if u != v:
                edges.setdefault((min(u, v), max(u, v)), draw(weight))
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])


def random_connected_graph(rng: np.random.Generator, n: int, extra: int = None) -> WeightedGraph:
    edges = {}
    for v in range(1, n):
        edges[(int(rng.integers(v)), v)] = float(rng.choice([0.5, 1.0, 2.0, 3.5]))
    extra = n if extra is None else extra
    for _ in range(extra if n > 2 else 0):
        u, v = (int(x) for x in rng.choice(n, 2, replace=False))
        edges.setdefault((min(u, v), max(u, v)), float(rng.choice([0.5, 1.0, 2.0, 3.5])))
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])


def standard_cases():
    """(name, graph, spd) for the fixed generator suite."""
    cases = []
    for name, g in [("path9", gens.path(9)), ("cycle7", gens.cycle(7)), ("star6", gens.star(6)),
                    ("clique6", gens.clique(6)), ("grid4x4", gens.grid(4, 4))]:
        cases.append((name, g, build_spd_greedy(g)))
    g, spd = gens.two_path_gadget(4)
    cases.append(("two_path4", g, spd))
    for k in (1, 2, 3):
        g, _ = gens.diamond(k)
        cases.append((f"diamond{k}", g, build_spd_from_path_decomposition(g, gens.diamond_path_decomposition(k))))
    bd = gens.buffered_diamondfold(1, 0.01)
    cases.append(("buffered1", bd.graph, bd.spd))
    return cases


@pytest.fixture(scope="session")
def cases():
    return standard_cases()


# acceptance criteria report: number -> (ok, detail)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
