from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from szeta.graph import build_graph, homology_basis

settings.register_profile(
    "default", deadline=None, max_examples=30, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

WEIGHTS = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2), Fraction(3)]

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, max_vertices=4, max_betti=3, weights=st.sampled_from(WEIGHTS), min_betti=1):
    """Connected multigraphs (loops allowed) with first Betti number in [min_betti, max_betti]."""
    n = draw(st.integers(1, max_vertices))
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v, draw(weights)))
    for _ in range(draw(st.integers(min_betti, max_betti))):
        edges.append((draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), draw(weights)))
    order = draw(st.permutations(range(len(edges))))
    return build_graph([edges[i] for i in order])


def combinatorial_graphs(**kw):
    return graphs(weights=st.just(Fraction(1)), **kw)


@pytest.fixture
def figure_eight():
    g = build_graph([(0, 0, 1), (0, 0, 1)])
    return g, homology_basis(g)


@pytest.fixture
def theta_graph():
    g = build_graph([(0, 1, 1), (0, 1, 1), (0, 1, 1)])
    return g, homology_basis(g)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
