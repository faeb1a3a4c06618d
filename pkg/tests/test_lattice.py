import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import epstein_direct
from szeta.errors import DimensionNotTwo, NonIntegerGram, NotPositiveDefinite, ParseError
from szeta.lattice import (
    congruence_trials,
    dn_plus_theta_by_coordinates,
    e8_gram,
    e8e8_theta_by_coordinates,
    enumerate_vectors,
    epstein_shells,
    epstein_zeta_truncated,
    format_lattice,
    format_theta,
    hexagonal_lattice,
    integer_lattice,
    lattice_from_basis,
    lattice_from_gram,
    parse_lattice,
    random_unimodular,
    root_components,
    theta_coefficients,
    torus_isoperimetric_check,
    torus_residue,
    unit_ball_volume,
    witt_pair,
)
from szeta.zeta import residue_numeric, riemann_zeta


@pytest.fixture(scope="module")
def witt():
    a, b = witt_pair()
    return a, b, theta_coefficients(a, 8), theta_coefficients(b, 8)


def test_construction_examples():
    z2 = integer_lattice(2)
    assert z2.covolume == 1
    assert hexagonal_lattice().covolume == pytest.approx(math.sqrt(3), rel=1e-15)
    e8 = lattice_from_gram(e8_gram())
    assert e8.covolume == 1 and e8.is_even
    with pytest.raises(NotPositiveDefinite):
        lattice_from_gram([[1, 2], [2, 1]])
    with pytest.raises(NotPositiveDefinite):
        lattice_from_gram([[1, 0.5], [0, 1]])


def test_enumeration_examples():
    z2 = integer_lattice(2)
    assert len(enumerate_vectors(z2, 1)) == 4
    assert len(enumerate_vectors(z2, math.sqrt(2) + 1e-9)) == 8
    e8 = lattice_from_gram(e8_gram())
    assert len(enumerate_vectors(e8, math.sqrt(2) + 1e-9)) == 240


def test_theta_examples(witt):
    assert theta_coefficients(integer_lattice(2), 2) == [4, 4]
    a, b, ta, tb = witt
    assert ta[1] == 480 and ta[3] == 61920
    e8 = theta_coefficients(lattice_from_gram(e8_gram()), 4)
    assert ta[3] == 2 * e8[3] + e8[1] ** 2
    assert all(r == 0 for r in ta[0::2])
    with pytest.raises(NonIntegerGram):
        theta_coefficients(lattice_from_gram([[1, 0], [0, 0.5]]), 3)


def test_witt_pair(witt):
    a, b, ta, tb = witt
    assert a.covolume == pytest.approx(1) and b.covolume == pytest.approx(1)
    assert ta == tb
    assert ta == dn_plus_theta_by_coordinates(16, 8) == e8e8_theta_by_coordinates(8)
    assert min(np.diag(a.integer_gram)) == 2
    assert enumerate_vectors(b, math.sqrt(2) + 1e-9)[0][1] == 2


def test_witt_pair_is_not_isometric(witt):
    a, b, _, _ = witt
    # isometric lattices have isomorphic root systems: E8+E8 versus D16
    assert root_components(a) == [240, 240]
    assert root_components(b) == [480]
    assert congruence_trials(a.integer_gram, b.integer_gram, trials=2000) == 0


def test_random_unimodular_has_unit_determinant():
    u = random_unimodular(6, np.random.default_rng(1), count=50)
    dets = np.rint(np.linalg.det(u.astype(float)))
    assert set(np.abs(dets).tolist()) == {1.0}
    # trials find a congruence when one exists
    g = np.array(e8_gram())
    assert congruence_trials(g, g, trials=200) >= 0


def test_epstein_examples():
    z2 = integer_lattice(2)
    v = epstein_zeta_truncated(z2, 4, 300)
    assert abs(v.value - 6.0268) < v.tail + 1e-4
    direct, tail = epstein_direct(np.eye(2), 4, 400)
    assert abs(direct - v.value) < v.tail + tail
    z1 = integer_lattice(1)
    assert epstein_zeta_truncated(z1, 2, 10**5).contains(math.pi**2 / 3)
    lam = 3
    scaled = epstein_zeta_truncated(z2.scaled(lam), 4, 3 * 50).value
    assert scaled == pytest.approx(lam**-4 * epstein_zeta_truncated(z2, 4, 50).value, rel=1e-12)


def test_epstein_matches_box_sum_on_hexagonal():
    hexa = hexagonal_lattice()
    direct, tail = epstein_direct([[2, 1], [1, 2]], 5, 300)
    v = epstein_zeta_truncated(hexa, 5, 200)
    assert abs(direct - v.value) < v.tail + tail


def test_isospectral_pair_has_equal_zeta(witt):
    a, b, _, _ = witt
    for z in (17, 20 + 3j):
        assert epstein_zeta_truncated(a, z, 2.9).value == pytest.approx(epstein_zeta_truncated(b, z, 2.9).value, rel=1e-14)


def test_torus_residue_examples():
    assert torus_residue(integer_lattice(2)) == pytest.approx(2 * math.pi)
    assert torus_residue(hexagonal_lattice().normalized()) == pytest.approx(2 * math.pi)
    assert torus_residue(integer_lattice(1)) == pytest.approx(2)


@pytest.mark.parametrize("b", [1, 2, 3])
def test_torus_residue_numeric(b):
    lat = integer_lattice(b)
    t = {1: 5000, 2: 300, 3: 60}[b]
    res = residue_numeric(epstein_shells(lat, t).completed(), b)
    assert abs(res.value - b * unit_ball_volume(b)) < 1e-2


def test_isoperimetric_examples():
    for lat in (integer_lattice(2), hexagonal_lattice()):
        lhs, rhs, holds = torus_isoperimetric_check(lat)
        assert lhs == 6 and rhs == pytest.approx(2 * math.pi) and holds
    with pytest.raises(DimensionNotTwo):
        torus_isoperimetric_check(integer_lattice(3))


@given(st.integers(1, 4), st.integers(-3, 3), st.integers(1, 4))
def test_isoperimetric_holds_for_every_plane_lattice(a, b, c):
    lat = lattice_from_basis([[a, b], [0, c]])
    assert torus_isoperimetric_check(lat)[2]


@given(st.integers(1, 3), st.integers(-1, 1), st.integers(1, 3), st.integers(1, 12))
def test_theta_counts_agree_with_enumeration(a, b, c, n):
    lat = lattice_from_gram([[2 * a, b], [b, 2 * c]])
    r = theta_coefficients(lat, n)
    vecs = enumerate_vectors(lat, math.sqrt(n))
    assert sum(r) == len(vecs)
    assert all(x >= 0 for x in r)
    # even form: odd norms never occur
    assert all(v == 0 for v in r[0::2])
    # brute force over a box that covers the ellipse
    box = 2 * n + 2
    g = np.array([[2 * a, b], [b, 2 * c]])
    brute = [0] * n
    for x, y in itertools.product(range(-box, box + 1), repeat=2):
        q = int(g[0, 0] * x * x + 2 * g[0, 1] * x * y + g[1, 1] * y * y)
        if 1 <= q <= n:
            brute[q - 1] += 1
    assert r == brute


def test_files_round_trip():
    lat = parse_lattice("# hex\nlattice 2\n2 1\n1 2\n")
    assert lat.exact_gram == ((2, 1), (1, 2))
    assert parse_lattice(format_lattice(lat)).exact_gram == lat.exact_gram
    assert format_theta([4, 4]) == "n,r_n\n1,4\n2,4\n"
    for bad in ("", "lattice\n", "lattice 2\n1 0\n", "lattice 2\n1 x\n0 1\n"):
        with pytest.raises(ParseError):
            parse_lattice(bad)
    with pytest.raises(NotPositiveDefinite):
        parse_lattice("lattice 2\n1 1\n0 1\n")


def test_one_dimensional_epstein_is_riemann():
    v = epstein_zeta_truncated(integer_lattice(1), 3, 2000)
    assert v.contains(2 * riemann_zeta(3))
