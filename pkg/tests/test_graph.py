import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import WEIGHTS, graphs
from szeta.errors import (
    BadVertexId,
    DisconnectedGraph,
    MismatchedEdgeSets,
    NonPositiveWeight,
    NotAWalk,
    NotClosed,
    ParseError,
)
from szeta.graph import (
    build_graph,
    cycle_class,
    format_graph,
    homology_basis,
    parse_graph,
    weight_distance,
)
from szeta.spectrum import enumerate_spectrum


def test_build_examples(figure_eight, theta_graph):
    g, _ = figure_eight
    assert g.vertex_count == 1 and g.n_edges == 2 and g.betti == 2
    g, _ = theta_graph
    assert g.vertex_count == 2 and g.n_edges == 3 and g.betti == 2
    tree = build_graph([(0, 1, 1)])
    assert tree.betti == 0


def test_build_errors():
    with pytest.raises(DisconnectedGraph):
        build_graph([(0, 1, 1), (2, 3, 1)])
    with pytest.raises(NonPositiveWeight):
        build_graph([(0, 0, 0)])
    with pytest.raises(NonPositiveWeight):
        build_graph([(0, 1, -1)])
    with pytest.raises(BadVertexId):
        build_graph([(0, 5, 1)], vertex_count=2)


def test_basis_examples(figure_eight, theta_graph):
    _, basis = figure_eight
    assert basis.betti == 2 and basis.cotree_edges == (0, 1)
    _, basis = theta_graph
    assert basis.cotree_edges == (1, 2) and basis.spanning_tree == {0}
    single = build_graph([(0, 1, 1)])
    assert homology_basis(single).cotree_edges == ()


def test_cycle_class_examples(theta_graph):
    _, basis = theta_graph
    # e0 forward (0 -> 1) then e1 backward (1 -> 0)
    assert cycle_class(basis, [(0, 1), (1, -1)]) == (-1, 0)
    assert cycle_class(basis, [(0, 1), (0, -1)]) == (0, 0)
    walk = [(1, 1), (2, -1)]
    assert cycle_class(basis, walk + walk) == tuple(2 * c for c in cycle_class(basis, walk))


def test_cycle_class_errors(theta_graph):
    _, basis = theta_graph
    with pytest.raises(NotClosed):
        cycle_class(basis, [(0, 1)])
    with pytest.raises(NotAWalk):
        cycle_class(basis, [(0, 1), (1, 1)])
    with pytest.raises(NotAWalk):
        cycle_class(basis, [(7, 1)])


def test_weight_distance_examples(theta_graph):
    g, _ = theta_graph
    assert weight_distance(g, g) == 0
    assert weight_distance([1, 1, 1], [math.e, math.e, math.e]) == pytest.approx(1)
    assert weight_distance([1, 1, 1], [2, 1, 1]) == pytest.approx(math.log(2))
    with pytest.raises(MismatchedEdgeSets):
        weight_distance([1, 1], [1, 1, 1])


def test_text_round_trip():
    text = "# theta\ngraph 2\n0 1 1\n0 1 3/2\n0 1 0.5\n"
    g = parse_graph(text)
    assert g.weights == (1, Fraction(3, 2), Fraction(1, 2))
    assert parse_graph(format_graph(g)) == g
    for bad in ("", "graph x\n", "graph 2\n0 1\n", "graph 2\n0 1 a\n", "graph 2\n"):
        with pytest.raises(ParseError):
            parse_graph(bad)


@given(graphs(), st.data())
def test_class_additive_under_concatenation(g, data):
    basis = homology_basis(g)
    a = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.betti, max_size=g.betti)))
    b = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.betti, max_size=g.betti)))
    wa, wb = basis.class_walk(a), basis.class_walk(b)
    if not wa or not wb:
        return
    assert cycle_class(basis, wa + wb) == tuple(x + y for x, y in zip(a, b))


@given(graphs(), st.data())
def test_every_class_is_realised(g, data):
    basis = homology_basis(g)
    theta = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=g.betti, max_size=g.betti)))
    base = data.draw(st.integers(0, g.vertex_count - 1))
    walk = basis.class_walk(theta, base)
    if any(theta):
        assert cycle_class(basis, walk) == theta
        assert g.tail(walk[0]) == base


@given(graphs(max_betti=2), st.lists(st.sampled_from(WEIGHTS), min_size=12, max_size=12))
def test_spectra_are_rho_close(g, new):
    basis = homology_basis(g)
    h = g.with_weights(new[: g.n_edges])
    rho = weight_distance(g, h)
    t = 3 * max(basis.fundamental_lengths())
    s1 = enumerate_spectrum(g, basis, t).entries
    s2 = enumerate_spectrum(h, basis, t * math.exp(rho)).entries
    for cls, l1 in s1.items():
        l2 = s2[cls]
        assert math.exp(-rho) * l1 <= l2 * (1 + 1e-12)
        assert l2 <= math.exp(rho) * l1 * (1 + 1e-12)
