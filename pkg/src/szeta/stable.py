"""Stable norm of a weighted graph: simple cycles, the exact unit ball, gauges.

For a graph the real first homology is the cycle space itself, so the stable
norm of a class is the weighted l1 norm of its unique real circulation.  The
unit ball is the convex hull of the normalised simple-cycle classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DegenerateBall, DimensionMismatch
from .graph import HomologyBasis, Step, WeightedGraph, cycle_class
from .polytope import (  # noqa: F401  (re-exported)
    StableBall,
    ball_from_vertices,
    banach_distance,
    exact_hull,
    gl_transform,
)


@dataclass(frozen=True)
class SimpleCycle:
    steps: tuple[Step, ...]
    cls: tuple[int, ...]
    length: Fraction

    @property
    def vertex_count(self) -> int:
        return len(self.steps)


def _lex_positive(v: Sequence[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def simple_cycles(g: WeightedGraph, basis: HomologyBasis) -> list[SimpleCycle]:
    """Every simple cycle once, oriented so its class is lexicographically positive.

    Backtracking from each start vertex s over vertices > s, with the current
    path as the blocked set.  Each non-loop cycle is met in both directions;
    only the traversal whose first edge index is below its last is kept.
    """
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.vertex_count)]
    cycles: list[list[Step]] = []
    for e, (u, v, _) in enumerate(g.edges):
        if u == v:
            cycles.append([(e, 1)])
            continue
        lo, hi = min(u, v), max(u, v)
        adj[lo].append((hi, e, 1))
        adj[hi].append((lo, e, -1))

    for s in range(g.vertex_count):
        blocked = {s}
        path: list[Step] = []

        def extend(x: int):
            for y, e, sign in adj[x]:
                if y == s and path and e != path[0][0]:
                    if path[0][0] < e:
                        cycles.append(path + [(e, sign)])
                elif y > s and y not in blocked:
                    blocked.add(y)
                    path.append((e, sign))
                    extend(y)
                    path.pop()
                    blocked.discard(y)

        extend(s)

    out = []
    for steps in cycles:
        c = cycle_class(basis, steps)
        if not _lex_positive(c):
            steps = [(e, -sg) for e, sg in reversed(steps)]
            c = tuple(-x for x in c)
        out.append(SimpleCycle(tuple(steps), c, g.walk_length(steps)))
    out.sort(key=lambda cyc: cyc.cls)
    return out


def stable_ball(g: WeightedGraph, basis: HomologyBasis) -> StableBall:
    """Exact unit ball: hull of +-class/length over all simple cycles."""
    if basis.betti == 0:
        raise DegenerateBall("graph is a tree (first Betti number 0)")
    pts = [tuple(Fraction(x) / c.length for x in c.cls) for c in simple_cycles(g, basis)]
    return exact_hull(pts, basis.betti)


def stable_norm(ball: StableBall, x: Sequence) -> Fraction:
    """Gauge of the ball at x: the largest facet functional."""
    return ball.gauge(x)


def ball_volume(ball: StableBall) -> Fraction:
    return ball.volume


def circulation(basis: HomologyBasis, theta: Sequence) -> list[Fraction]:
    """The unique real edge flow with the given cotree values.

    Conservation at every vertex pins the tree flows, solved leaf-first.
    """
    g = basis.graph
    if len(theta) != basis.betti:
        raise DimensionMismatch(f"class of length {len(theta)}, betti is {basis.betti}")
    flow = [Fraction(0)] * g.n_edges
    excess = [Fraction(0)] * g.vertex_count
    for j, e in enumerate(basis.cotree_edges):
        u, v, _ = g.edges[e]
        flow[e] = Fraction(theta[j])
        if u != v:
            lo, hi = min(u, v), max(u, v)
            excess[lo] -= flow[e]
            excess[hi] += flow[e]
    parent, pedge, depth = basis._rooted
    for x in sorted(range(g.vertex_count), key=lambda a: -depth[a]):
        e = pedge[x]
        if e < 0:
            continue
        u, v, _ = g.edges[e]
        # push x's excess up to its parent along e
        flow[e] = -excess[x] if x == max(u, v) else excess[x]
        excess[parent[x]] += excess[x]
        excess[x] = Fraction(0)
    return flow


def stable_norm_lp(g: WeightedGraph, basis: HomologyBasis, theta: Sequence) -> Fraction:
    """Minimum of sum w_e |x_e| over circulations x with x = theta on cotree edges.

    The graph has no 2-cells, so the constraints leave exactly one feasible
    flow and the optimum is its cost.
    """
    return sum((w * abs(x) for (_, _, w), x in zip(g.edges, circulation(basis, theta))), Fraction(0))


def asymptotic_volume(g: WeightedGraph, basis: HomologyBasis) -> Fraction:
    """Ball volume times total edge weight (graph stand-in for the manifold volume)."""
    return stable_ball(g, basis).volume * g.total_weight


def integer_points(ball: StableBall, t, chunk: int = 1 << 20) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Integer points of the box around t*B with their scaled gauges, in chunks.

    Yields ``(points, scaled)`` where ``scaled = D * gauge`` is exact.  The
    caller filters ``scaled <= D * t``.
    """
    t = Fraction(t)
    bounds = [math.floor(t * r) for r in ball.box_radius]
    b = ball.dim
    inner = int(np.prod([2 * r + 1 for r in bounds[1:]])) if b > 1 else 1
    per = max(1, chunk // max(inner, 1))
    first = np.arange(-bounds[0], bounds[0] + 1)
    rest = [np.arange(-r, r + 1) for r in bounds[1:]]
    for start in range(0, len(first), per):
        axes = [first[start:start + per]] + rest
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, b)
        yield grid, ball.scaled_gauges(grid)


def lattice_count(ball: StableBall, t) -> int:
    """|t B cap Z^b|, origin included."""
    t = Fraction(t)
    if t < 0:
        return 0
    limit = math.floor(t * ball.normal_denominator)
    total = 0
    for _, scaled in integer_points(ball, t):
        total += int(np.count_nonzero(scaled <= limit))
    return total


def lattice_norms(ball: StableBall, t) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero integer points with norm <= t and their scaled gauges (``D * norm``)."""
    t = Fraction(t)
    limit = math.floor(t * ball.normal_denominator)
    pts, vals = [], []
    for grid, scaled in integer_points(ball, t):
        keep = (scaled <= limit) & (scaled > 0)
        pts.append(grid[keep])
        vals.append(scaled[keep])
    if not pts:
        return np.zeros((0, ball.dim), np.int64), np.zeros(0, np.int64)
    return np.concatenate(pts), np.concatenate(vals)
