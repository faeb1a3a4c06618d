"""Property suite that runs on its own: ``pytest tests/test_properties.py``.

Covers norm axioms, exact gauge/LP agreement, subadditivity of the length
spectrum, monotone consistency of enumeration, Hurwitz identities and
determinism of the CSV writers.
"""

import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from szeta.graph import homology_basis
from szeta.spectrum import (
    enumerate_spectrum,
    ordered_spectrum,
    parse_spectrum_csv,
    shortest_in_class,
    write_ordered_csv,
    write_spectrum_csv,
)
from szeta.stable import stable_ball, stable_norm, stable_norm_lp
from szeta.zeta import format_evaluations, hurwitz_zeta, riemann_zeta

rationals = st.fractions(-6, 6, max_denominator=7)


@given(graphs(), st.data())
def test_norm_axioms(g, data):
    ball = stable_ball(g, homology_basis(g))
    vec = st.lists(rationals, min_size=g.betti, max_size=g.betti)
    x, y = data.draw(vec), data.draw(vec)
    lam = data.draw(rationals)
    nx = stable_norm(ball, x)
    assert stable_norm(ball, [lam * a for a in x]) == abs(lam) * nx
    assert stable_norm(ball, [a + b for a, b in zip(x, y)]) <= nx + stable_norm(ball, y)
    assert (nx > 0) == any(x)
    assert stable_norm(ball, [-a for a in x]) == nx


@given(graphs())
def test_gauge_equals_lp_exactly(g):
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    box = 4 if g.betti <= 2 else 2
    for theta in itertools.product(range(-box, box + 1), repeat=g.betti):
        assert stable_norm(ball, theta) == stable_norm_lp(g, basis, theta)


@given(graphs(), st.data())
def test_subadditivity(g, data):
    basis = homology_basis(g)
    ball = stable_ball(g, basis)
    theta = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=g.betti, max_size=g.betti).filter(any)))
    l1 = shortest_in_class(g, basis, theta)
    for n in range(1, 6):
        assert shortest_in_class(g, basis, tuple(n * x for x in theta)) <= n * l1
    assert stable_norm(ball, theta) <= l1


@given(graphs(), st.fractions(0, 1))
def test_monotone_consistency(g, frac):
    basis = homology_basis(g)
    t = 2 * max(basis.fundamental_lengths())
    full = enumerate_spectrum(g, basis, t)
    assert full.restrict(frac * t).entries == enumerate_spectrum(g, basis, frac * t).entries


@given(
    st.builds(complex, st.floats(-9, 10).filter(lambda x: abs(x - 1) > 1e-2), st.floats(-40, 40)),
    st.floats(0.05, 5),
)
def test_hurwitz_identities(z, q):
    zeta = riemann_zeta(z)
    assert abs(hurwitz_zeta(z, 1) - zeta) <= 1e-10 * max(1, abs(zeta))
    half = (2**z - 1) * zeta
    assert abs(hurwitz_zeta(z, Fraction(1, 2)) - half) <= 1e-10 * max(1, abs(half))
    if z.real > -1:
        lhs = hurwitz_zeta(z, q)
        rhs = q ** (-z) + hurwitz_zeta(z, q + 1)
        assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


@given(graphs(max_betti=2))
def test_csv_determinism(g):
    basis = homology_basis(g)
    t = 3 * max(basis.fundamental_lengths())
    first = enumerate_spectrum(g, basis, t)
    second = enumerate_spectrum(g, basis, t)
    a = write_spectrum_csv(first, g, basis, ["h"])
    assert a == write_spectrum_csv(second, g, basis, ["h"])
    assert parse_spectrum_csv(a) == first
    assert write_ordered_csv(ordered_spectrum(first)) == write_ordered_csv(ordered_spectrum(second))
    rows = [(3 + 1j, riemann_zeta(3 + 1j), 1e-3)]
    assert format_evaluations(rows) == format_evaluations(list(rows))
