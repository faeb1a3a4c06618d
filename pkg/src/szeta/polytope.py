"""Exact centrally symmetric rational polytopes.

Qhull proposes the boundary triangulation in floating point; every facet is
then recomputed and certified in exact rational arithmetic.  If the floating
proposal cannot be certified the hull falls back to exhaustive exact facet
search, which is only feasible for small point sets.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import DegenerateBall, DimensionMismatch, SingularMatrix
from .graph import lcm_of_denominators

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class StableBall:
    """Unit ball of a polyhedral norm on R^b.

    ``facets`` holds normals ``n`` with facet ``{x : <n, x> = 1}``; the gauge
    of the ball is ``max_n <n, x>``.  Volume is taken with respect to the
    Haar measure giving Z^b covolume 1.
    """

    dim: int
    vertices: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    volume: Fraction

    @cached_property
    def normal_denominator(self) -> int:
        """Smallest D with D * normal integral for every facet normal."""
        return lcm_of_denominators(x for n in self.facets for x in n)

    @cached_property
    def integer_normals(self) -> np.ndarray:
        d = self.normal_denominator
        return np.array([[int(x * d) for x in n] for n in self.facets], dtype=np.int64)

    @property
    def integer_valued(self) -> bool:
        """True when the norm is an integer at every lattice point."""
        return self.normal_denominator == 1

    @cached_property
    def vertex_denominator(self) -> int:
        return lcm_of_denominators(x for v in self.vertices for x in v)

    def gauge(self, x: Sequence) -> Fraction:
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} for a {self.dim}-dimensional ball")
        return max(linalg.dot(n, x) for n in self.facets)

    def scaled_gauges(self, points: np.ndarray) -> np.ndarray:
        """``normal_denominator * gauge`` for integer points (rows), exactly, as int64."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.dim)
        return (points @ self.integer_normals.T).max(axis=1)

    @cached_property
    def cube_radius(self) -> Fraction:
        """Largest gauge on the cube [-1/2, 1/2]^b (radius of a lattice cell)."""
        half = Fraction(1, 2)
        return max(
            self.gauge(tuple(half * s for s in signs))
            for signs in itertools.product((1, -1), repeat=self.dim)
        )

    @cached_property
    def box_radius(self) -> tuple[Fraction, ...]:
        """Per-coordinate bound: the unit ball lies in prod [-r_i, r_i]."""
        return tuple(max(abs(v[i]) for v in self.vertices) for i in range(self.dim))

    def facet_vertices(self, normal: Vector) -> list[Vector]:
        return [v for v in self.vertices if linalg.dot(normal, v) == 1]


def _symmetric_points(points: Iterable[Sequence]) -> list[Vector]:
    pts = {tuple(Fraction(x) for x in p) for p in points}
    pts |= {tuple(-x for x in p) for p in pts}
    return sorted(p for p in pts if any(p))


def _exact_normal(simplex: Sequence[Vector]) -> Vector | None:
    sol = linalg.solve(simplex, [1] * len(simplex))
    return None if sol is None else tuple(sol)


def _certified_from_qhull(points: list[Vector], dim: int):
    from scipy.spatial import ConvexHull, QhullError

    arr = np.array([[float(x) for x in p] for p in points])
    try:
        hull = ConvexHull(arr)
    except QhullError:
        return None
    normals: dict[Vector, None] = {}
    simplices = []
    for simplex in hull.simplices:
        verts = [points[i] for i in simplex]
        n = _exact_normal(verts)
        if n is None:
            return None
        normals.setdefault(n)
        simplices.append(tuple(sorted(int(i) for i in simplex)))
    # closed pseudo-manifold: every ridge of the triangulation is shared twice
    ridges = Counter(r for s in simplices for r in itertools.combinations(s, dim - 1))
    if any(c != 2 for c in ridges.values()):
        return None
    for n in normals:
        if any(linalg.dot(n, p) > 1 for p in points):
            return None
    volume = sum(
        (abs(linalg.det([points[i] for i in s])) for s in simplices), Fraction(0)
    ) / math.factorial(dim)
    return list(normals), volume


def _brute_force_facets(points: list[Vector], dim: int) -> list[Vector]:
    normals = {}
    for subset in itertools.combinations(points, dim):
        n = _exact_normal(subset)
        if n is None or n in normals:
            continue
        if all(linalg.dot(n, p) <= 1 for p in points):
            normals[n] = None
    return list(normals)


def exact_hull(points: Iterable[Sequence], dim: int) -> StableBall:
    """Exact hull of the symmetric closure of ``points`` (origin must be interior)."""
    pts = _symmetric_points(points)
    if dim < 1 or not pts:
        raise DegenerateBall("no nonzero points")
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of inconsistent dimension")
    if linalg.rank(pts) < dim:
        raise DegenerateBall(f"points span rank {linalg.rank(pts)} < {dim}")
    if dim == 1:
        a = max(p[0] for p in pts)
        return StableBall(1, ((a,), (-a,)), ((1 / a,), (-1 / a,)), 2 * a)
    certified = _certified_from_qhull(pts, dim)
    if certified is not None:
        normals, volume = certified
    else:
        normals = _brute_force_facets(pts, dim)
        volume = None
    # a point is a vertex iff the facets through it have normals of full rank
    vertices = []
    for p in pts:
        active = [n for n in normals if linalg.dot(n, p) == 1]
        if active and linalg.rank(active) == dim:
            vertices.append(p)
    if volume is None:
        volume = polytope_volume(vertices)
    normals = sorted(normals)
    return StableBall(dim, tuple(sorted(vertices)), tuple(normals), volume)


def _hyperplane(points: Sequence[Vector]) -> tuple[Vector, Fraction] | None:
    """Affine hyperplane ``<n, x> = beta`` through k points of R^k, or None."""
    k = len(points[0])
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    normal = []
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        normal.append((-1) ** j * linalg.det(minor) if minor else Fraction(1))
    if not any(normal):
        return None
    lead = next(abs(x) for x in normal if x)
    normal = tuple(x / lead for x in normal)
    return normal, linalg.dot(normal, p0)


def _polytope_facets(points: list[Vector]) -> list[tuple[Vector, Fraction, list[Vector]]]:
    """Outward facets of a full-dimensional polytope in R^k, by exhaustive search."""
    k = len(points[0])
    found = {}
    for subset in itertools.combinations(points, k):
        hp = _hyperplane(subset)
        if hp is None:
            continue
        n, beta = hp
        vals = [linalg.dot(n, p) - beta for p in points]
        if all(v <= 0 for v in vals):
            key = (n, beta)
        elif all(v >= 0 for v in vals):
            key = (tuple(-x for x in n), -beta)
        else:
            continue
        if key not in found:
            found[key] = [p for p, v in zip(points, vals) if v == 0]
    return [(n, beta, on) for (n, beta), on in found.items()]


def polytope_volume(points: Iterable[Sequence]) -> Fraction:
    """Exact volume of conv(points) in R^k (zero when not full-dimensional).

    Recursive cone decomposition from a reference vertex: each facet
    contributes its height times the volume of its coordinate projection,
    with the normal scaled so the dropped coordinate has unit coefficient.
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    k = len(pts[0])
    if k == 1:
        return max(p[0] for p in pts) - min(p[0] for p in pts)
    if len(pts) <= k or linalg.rank([p + (Fraction(1),) for p in pts]) < k + 1:
        return Fraction(0)
    ref = pts[0]
    total = Fraction(0)
    for n, beta, on in _polytope_facets(pts):
        height = beta - linalg.dot(n, ref)
        if height == 0:
            continue
        j = next(i for i, x in enumerate(n) if x)
        scale = abs(n[j])
        projected = [p[:j] + p[j + 1:] for p in on]
        total += height / scale * polytope_volume(projected)
    return total / k


def ball_from_vertices(points: Iterable[Sequence]) -> StableBall:
    """Ball spanned by the symmetric closure of the given points."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise DegenerateBall("no points")
    return exact_hull(pts, len(pts[0]))


def cube(dim: int, radius=1) -> StableBall:
    r = Fraction(radius)
    return ball_from_vertices(itertools.product((r, -r), repeat=dim))


def cross_polytope(dim: int, radius=1) -> StableBall:
    r = Fraction(radius)
    pts = [tuple(r if i == j else Fraction(0) for i in range(dim)) for j in range(dim)]
    return ball_from_vertices(pts)


def gl_transform(ball: StableBall, h) -> StableBall:
    """Image h(B) of the ball: ||x||_h = ||h^{-1} x||."""
    h = linalg.to_matrix(h)
    if len(h) != ball.dim or any(len(r) != ball.dim for r in h):
        raise DimensionMismatch("matrix does not match the ball's dimension")
    d = linalg.det(h)
    if d == 0:
        raise SingularMatrix("transformation is singular")
    hinv = linalg.inverse(h)
    vertices = tuple(sorted(tuple(linalg.matvec(h, v)) for v in ball.vertices))
    # row vector n h^{-1}
    cols = list(zip(*hinv))
    facets = tuple(sorted(tuple(linalg.dot(n, c) for c in cols) for n in ball.facets))
    return StableBall(ball.dim, vertices, facets, ball.volume * abs(d))


def banach_distance(b1: StableBall, b2: StableBall) -> float:
    """ln of the best constant c with c^-1 ||.||_1 <= ||.||_2 <= c ||.||_1."""
    if b1.dim != b2.dim:
        raise DimensionMismatch(f"dimensions {b1.dim} and {b2.dim}")
    c = max(
        max(b2.gauge(v) for v in b1.vertices),
        max(b1.gauge(u) for u in b2.vertices),
    )
    return math.log(c)


def format_ball(ball: StableBall) -> str:
    lines = [f"dim {ball.dim}"]
    lines += ["vertex " + " ".join(str(x) for x in v) for v in ball.vertices]
    lines += ["facet " + " ".join(str(x) for x in n) for n in ball.facets]
    return "\n".join(lines) + "\n"


def parse_ball(text: str) -> StableBall:
    from .errors import ParseError

    dim = None
    verts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        try:
            if key == "dim":
                dim = int(rest[0])
            elif key == "vertex":
                verts.append(tuple(Fraction(x) for x in rest))
            elif key == "facet":
                pass
            else:
                raise ValueError(key)
        except (ValueError, IndexError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from None
    if dim is None or any(len(v) != dim for v in verts):
        raise ParseError("missing dim header or vertex of wrong length")
    return exact_hull(verts, dim)
