import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import combinatorial_graphs, graphs
from oracles import pick_count, shortest_walks
from szeta.errors import DegenerateBall, ZeroClass
from szeta.graph import build_graph, homology_basis
from szeta.spectrum import (
    MarkedSpectrum,
    burago_band,
    counting_function,
    enumerate_spectrum,
    min_basis_radius,
    ordered_spectrum,
    parse_spectrum_csv,
    shortest_in_class,
    stable_limit_probe,
    systole,
    write_ordered_csv,
    write_spectrum_csv,
)
from szeta.stable import stable_ball, stable_norm

F = Fraction


def test_shortest_examples(figure_eight, theta_graph):
    assert shortest_in_class(*figure_eight, (1, 0)) == 1
    assert shortest_in_class(*figure_eight, (3, -2)) == 5
    assert shortest_in_class(*theta_graph, (1, 1)) == 4
    assert shortest_walks(*theta_graph, 6)[(1, 1)] == 4
    with pytest.raises(ZeroClass):
        shortest_in_class(*theta_graph, (0, 0))


def test_enumerate_examples(figure_eight, theta_graph):
    ms = enumerate_spectrum(*figure_eight, 1)
    assert ms.entries == {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1}
    assert len(enumerate_spectrum(*figure_eight, 2)) == 12
    assert len(enumerate_spectrum(*theta_graph, F(19, 10))) == 0
    tree = build_graph([(0, 1, 1)])
    with pytest.raises(DegenerateBall):
        enumerate_spectrum(tree, homology_basis(tree), 3)


def test_ordered_examples(figure_eight, theta_graph):
    assert list(ordered_spectrum(enumerate_spectrum(*figure_eight, 2))) == [(1, 4), (2, 8)]
    assert list(ordered_spectrum(enumerate_spectrum(*theta_graph, 2))) == [(2, 6)]
    assert list(ordered_spectrum(MarkedSpectrum({}, F(0)))) == []


def test_counting_examples(theta_graph):
    ball = stable_ball(*theta_graph)
    assert counting_function(ball, 2) == 6
    # Pick: 4 * hexagon has integer vertices
    assert counting_function(ball, 4) == pick_count([tuple(4 * x for x in v) for v in ball.vertices]) - 1 == 18
    assert counting_function(ball, 0) == 0


def test_band_examples(figure_eight, theta_graph):
    for R in (1, 3, 6):
        assert burago_band(*figure_eight, R) == 0
    # oracle: exhaustive walks of at most 8 steps cover every class of norm <= 6
    g, basis = theta_graph
    ball = stable_ball(g, basis)
    walks = shortest_walks(g, basis, 8)
    expected = max(l - stable_norm(ball, c) for c, l in walks.items() if stable_norm(ball, c) <= 6)
    assert burago_band(g, basis, 6) == expected == 0
    assert burago_band(g, basis, 1) == 0


def test_band_nonzero_regression():
    # two loops joined by a bridge: mixed classes cross the bridge twice
    g = build_graph([(0, 0, F(1, 2)), (0, 1, 1), (1, 1, F(3, 2))])
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    walks = shortest_walks(g, basis, 9)
    R = 4
    expected = max(l - stable_norm(ball, c) for c, l in walks.items() if stable_norm(ball, c) <= R)
    assert burago_band(g, basis, R) == expected == 2


def test_probe_examples(figure_eight, theta_graph):
    assert stable_limit_probe(*figure_eight, (1, 1), 4) == [2, 2, 2, 2]
    assert stable_limit_probe(*theta_graph, (1, 0), 3) == [2, 2, 2]
    assert stable_limit_probe(*theta_graph, (1, 1), 1) == [shortest_in_class(*theta_graph, (1, 1))]


def test_basis_radius_examples(figure_eight, theta_graph):
    assert min_basis_radius(*figure_eight) == 1
    assert min_basis_radius(*theta_graph) == 2
    loop = build_graph([(0, 0, 7)])
    assert min_basis_radius(loop, homology_basis(loop)) == 7
    assert systole(*theta_graph) == 2


def test_csv_round_trip(theta_graph):
    ms = enumerate_spectrum(*theta_graph, 6)
    text = write_spectrum_csv(ms, *theta_graph, header=["run"])
    assert parse_spectrum_csv(text) == ms
    assert write_spectrum_csv(ms, *theta_graph, header=["run"]) == text
    assert write_ordered_csv(ordered_spectrum(ms)).splitlines()[0] == "2,6"


@given(graphs(max_vertices=3, max_betti=2))
def test_matches_exhaustive_walks(g):
    basis = homology_basis(g)
    steps = 6
    t = steps * min(g.weights)
    oracle = {c: l for c, l in shortest_walks(g, basis, steps).items() if l <= t}
    assert enumerate_spectrum(g, basis, t).entries == oracle


@given(graphs(max_betti=3), st.data())
def test_subadditive_and_above_norm(g, data):
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    theta = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.betti, max_size=g.betti)))
    if not any(theta):
        return
    l1 = shortest_in_class(g, basis, theta)
    assert stable_norm(ball, theta) <= l1
    for n in range(1, 6):
        assert shortest_in_class(g, basis, tuple(n * x for x in theta)) <= n * l1


@given(graphs(max_betti=3), st.fractions(0, 1))
def test_monotone_consistency(g, frac):
    basis = homology_basis(g)
    t = 2 * max(basis.fundamental_lengths())
    small = frac * t
    full = enumerate_spectrum(g, basis, t)
    assert full.restrict(small).entries == enumerate_spectrum(g, basis, small).entries


@given(combinatorial_graphs(max_betti=3))
def test_combinatorial_lengths_are_integers(g):
    basis = homology_basis(g)
    ms = enumerate_spectrum(g, basis, 6)
    assert all(l.denominator == 1 and l >= 1 for l in ms.entries.values())


@settings(max_examples=10)
@given(graphs(max_vertices=3, max_betti=2))
def test_growth_is_order_t_to_the_b(g):
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    t = 10 * systole(g, basis)
    n = len(enumerate_spectrum(g, basis, t))
    ratio = F(n) / t ** g.betti
    assert ball.volume / 2 <= ratio <= 2 * ball.volume


@settings(max_examples=10)
@given(graphs(max_betti=3))
def test_band_monotone(g):
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    s = systole(g, basis)
    bands = [burago_band(g, basis, k * s, ball) for k in (1, 2, 4)]
    assert bands == sorted(bands)
    assert bands[-1] <= 2 * sum(g.weights)


def test_every_band_class_realised_at_norm_on_one_vertex_graphs():
    g = build_graph([(0, 0, 1), (0, 0, 2), (0, 0, 3)])
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    for theta in itertools.product(range(-2, 3), repeat=3):
        if any(theta):
            assert shortest_in_class(g, basis, theta) == stable_norm(ball, theta)


def test_band_jumps_after_eight_systoles():
    # a short loop far from a triangle: mixed classes first appear at norm 5
    g = build_graph([(0, 1, F(3, 2)), (1, 2, 1), (1, 3, F(3, 2)), (0, 0, F(1, 2)), (0, 3, F(3, 2)), (3, 2, F(3, 2))])
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    assert 8 * systole(g, basis) == 4
    assert [burago_band(g, basis, R, ball) for R in (4, 5, 8, 16)] == [0, 3, 3, 3]
    assert shortest_walks(g, basis, 9)[(-2, 0, -1)] == 8 and stable_norm(ball, (-2, 0, -1)) == 5
