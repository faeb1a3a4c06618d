import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import combinatorial_graphs, graphs
from oracles import lp_lattice_count, pick_count
from szeta.ehrhart import (
    decomposition_for,
    dilate_counts,
    ehrhart_fit,
    format_table,
    hurwitz_decomposition,
    integerized_decomposition,
    shell_counts,
)
from szeta.errors import NotIntegerValued
from szeta.graph import build_graph, homology_basis
from szeta.polytope import cross_polytope, cube, gl_transform
from szeta.stable import lattice_count, stable_ball

F = Fraction


def theta_ball():
    g = build_graph([(0, 1, 1)] * 3)
    return stable_ball(g, homology_basis(g))


def test_fit_examples(figure_eight):
    qp = ehrhart_fit(stable_ball(*figure_eight))
    assert qp.m == 1 and qp.polynomial(1) == [1, 2, 2]
    qp = ehrhart_fit(theta_ball())
    assert qp.m == 2
    assert qp.polynomial(1) == [F(1, 4), 0, F(3, 4)]
    assert qp.polynomial(2) == [1, F(3, 2), F(3, 4)]
    assert [qp(n) for n in (1, 2, 3, 4)] == [1, 7, 7, 19]
    seg = ehrhart_fit(cube(1))
    assert seg.polynomial(1) == [1, 2]


def test_theta_counts_match_pick():
    ball = theta_ball()
    for n in range(2, 9, 2):
        assert lattice_count(ball, n) == pick_count([tuple(n * x for x in v) for v in ball.vertices])


def test_held_out_and_unpinned_fit_agree():
    ball = theta_ball()
    pinned = ehrhart_fit(ball)
    free = ehrhart_fit(ball, pin_volume=False)
    assert pinned == free
    counts = dilate_counts(ball, [5, 6])
    assert {n: pinned(n) for n in (5, 6)} == counts


def test_shell_examples(figure_eight):
    sc = shell_counts(ehrhart_fit(theta_ball()))
    assert sc.coeffs[0] == (0, 0)
    assert sc.coeffs[1] == (F(-3, 2), F(3, 2))
    assert [sc(n) for n in range(1, 7)] == [0, 6, 0, 12, 0, 18]
    sc = shell_counts(ehrhart_fit(stable_ball(*figure_eight)))
    assert all(x == 0 for row in sc.coeffs for x in row)
    assert [sc(n) for n in (1, 2, 3)] == [4, 8, 12]
    sc = shell_counts(ehrhart_fit(cube(1)))
    assert sc.coeffs == ((0,),) and sc(5) == 2


def test_hurwitz_examples(figure_eight):
    hd = decomposition_for(theta_ball())
    assert hd.m == 2 and hd.p[1] == (F(-3, 2), F(3, 2)) and hd.p[0] == (0, 0)
    hd = decomposition_for(stable_ball(*figure_eight))
    assert all(x == 0 for row in hd.p for x in row)
    loop = build_graph([(0, 0, 1)])
    hd = decomposition_for(stable_ball(loop, homology_basis(loop)))
    assert hd.p == ((0,),)


def test_non_integer_valued_norm_is_rejected():
    ball = gl_transform(cube(2), [[2, 0], [0, 1]])
    assert not ball.integer_valued
    with pytest.raises(NotIntegerValued):
        hurwitz_decomposition(shell_counts(ehrhart_fit(ball)))
    hd = integerized_decomposition(ball)
    assert hd.scale == 2 and hd.m == 2


def test_reciprocity_on_cross_polytope():
    ball = cross_polytope(2)
    qp = ehrhart_fit(ball)
    for n in (1, 2, 3):
        interior = sum(1 for x, y in itertools.product(range(-n, n + 1), repeat=2) if abs(x) + abs(y) < n)
        assert qp(-n) == (-1) ** 2 * interior


def test_cube_three():
    qp = ehrhart_fit(cube(3))
    assert qp.leading == 8
    assert [qp(n) for n in range(4)] == [(2 * n + 1) ** 3 for n in range(4)]


def test_table_format():
    text = format_table(ehrhart_fit(theta_ball()))
    assert "2 1 3/4" in text and "1 2 3/2" in text


def test_counts_match_lp_oracle(theta_graph):
    g, basis = theta_graph
    ball = stable_ball(g, basis)
    for n in (1, 2, 3):
        assert lattice_count(ball, n) == lp_lattice_count(g, basis, n, box=2 * n)


@settings(max_examples=15)
@given(combinatorial_graphs(max_vertices=3, max_betti=3))
def test_combinatorial_fits(g):
    ball = stable_ball(g, homology_basis(g))
    qp = ehrhart_fit(ball)
    assert qp.leading == ball.volume
    sc = shell_counts(qp)
    assert sum(sc.coeffs[g.betti - 1]) == 0
    hd = hurwitz_decomposition(sc)
    assert hd.volume == ball.volume


@settings(max_examples=10)
@given(graphs(max_vertices=3, max_betti=2))
def test_weighted_fits_via_rescaling(g):
    ball = stable_ball(g, homology_basis(g))
    hd = integerized_decomposition(ball)
    # B/D has volume vol(B) / D^b
    assert hd.volume * hd.scale ** g.betti == ball.volume
    assert sum(hd.p[g.betti - 1]) == 0
